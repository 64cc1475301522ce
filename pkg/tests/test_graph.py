import pytest
from hypothesis import given

from oracles import clique_count_oracle, degeneracy_oracle, nabla1_oracle
from strategies import graphs
from widthkit.bounds import wood_clique_bound
from widthkit.errors import InvalidArgument
from widthkit.graph import (
    Graph, add_edge, clique_counts, clique_number, complete_bipartite, complete_graph,
    connected_components, contract_edge, count_cliques, cycle_graph, degeneracy,
    degeneracy_order, delete_edge, delete_vertex, dissolve, empty_graph, induced_subgraph,
    is_twin_pair, path_graph, star_graph, subdivide,
)


def test_basic_families():
    assert complete_graph(5).m == 10
    assert cycle_graph(6).m == 6
    assert path_graph(4).edges() == [(0, 1), (1, 2), (2, 3)]
    assert complete_bipartite(3, 3).m == 9
    assert star_graph(4).degree(0) == 4
    assert empty_graph(3).m == 0
    assert subdivide(complete_graph(4)).n == 10


def test_rejects_bad_edges():
    with pytest.raises(InvalidArgument):
        Graph(3, [(0, 3)])
    with pytest.raises(InvalidArgument):
        Graph(3, [(1, 1)])
    with pytest.raises(InvalidArgument):
        Graph(-1)
    with pytest.raises(InvalidArgument):
        Graph.from_adjacency([0b10, 0b00])


def test_contract_edge_of_c4_gives_triangle():
    g = contract_edge(cycle_graph(4), (0, 1))
    assert g == complete_graph(3)


def test_contract_merged_vertex_is_last():
    g = contract_edge(path_graph(4), (1, 2))
    # remaining 0, 3 keep their order as 0, 1; merged vertex is 2
    assert g.edges() == [(0, 2), (1, 2)]


def test_dissolve_and_errors():
    assert dissolve(path_graph(3), 1) == Graph(2, [(0, 1)])
    with pytest.raises(InvalidArgument):
        dissolve(star_graph(3), 0)
    with pytest.raises(InvalidArgument):
        delete_edge(path_graph(3), 0, 2)
    with pytest.raises(InvalidArgument):
        contract_edge(path_graph(3), (0, 2))


def test_induced_subgraph_index_map():
    h, idx = induced_subgraph(cycle_graph(5), [4, 0, 2])
    assert idx == [0, 2, 4]
    assert h.edges() == [(0, 2)]


def test_twins():
    g = complete_bipartite(2, 3)
    assert is_twin_pair(g, 0, 1)
    assert is_twin_pair(complete_graph(3), 0, 1)
    assert not is_twin_pair(path_graph(3), 0, 1)
    with pytest.raises(InvalidArgument):
        is_twin_pair(g, 0, 0)


def test_clique_examples():
    assert count_cliques(complete_graph(4)) == 16
    assert count_cliques(complete_graph(4), 3) == 4
    assert count_cliques(empty_graph(3)) == 4
    assert clique_number(cycle_graph(5)) == 2
    assert clique_counts(Graph(0)) == [1]


def test_degeneracy_examples():
    assert degeneracy(complete_graph(5)) == 4
    assert degeneracy(cycle_graph(7)) == 2
    assert degeneracy(star_graph(6)) == 1
    assert degeneracy(Graph(0)) == 0


@given(graphs(max_n=7))
def test_degeneracy_matches_oracle(g):
    assert degeneracy(g) == degeneracy_oracle(g)
    assert sorted(degeneracy_order(g)) == list(range(g.n))


@given(graphs(max_n=7))
def test_clique_counts_match_oracle(g):
    assert count_cliques(g) == clique_count_oracle(g)
    for k in range(g.n + 2):
        assert count_cliques(g, k) == clique_count_oracle(g, k) if k <= g.n else count_cliques(g, k) == 0


@given(graphs(max_n=8))
def test_wood_bound(g):
    d = degeneracy(g)
    assert count_cliques(g) <= wood_clique_bound(g.n, d)


@given(graphs(max_n=6))
def test_degeneracy_at_most_twice_nabla1(g):
    assert degeneracy(g) <= 2 * nabla1_oracle(g)


@given(graphs(max_n=8))
def test_relabel_roundtrip_and_hash(g):
    order = list(reversed(range(g.n)))
    h = g.relabel(order)
    assert h.relabel(order) == g
    assert hash(h.relabel(order)) == hash(g)
    assert h.m == g.m


@given(graphs(min_n=1, max_n=8))
def test_surgery_counts(g):
    h = delete_vertex(g, 0)
    assert h.n == g.n - 1 and h.m == g.m - g.degree(0)
    comps = connected_components(g)
    assert sum(c.bit_count() for c in comps) == g.n
    if g.m:
        u, v = g.edges()[0]
        assert delete_edge(g, u, v).m == g.m - 1
        assert add_edge(delete_edge(g, u, v), u, v) == g
        c = contract_edge(g, (u, v))
        assert c.n == g.n - 1


def test_small_surgery_examples():
    assert induced_subgraph(complete_graph(3), [0, 1])[0] == Graph(2, [(0, 1)])
    c5 = cycle_graph(5)
    assert induced_subgraph(c5, range(5))[0] == c5
    assert induced_subgraph(c5, [1, 2, 3])[0] == path_graph(3)
    assert contract_edge(path_graph(3), (0, 1)) == Graph(2, [(0, 1)])
    assert contract_edge(complete_graph(3), (1, 2)) == Graph(2, [(0, 1)])
    assert dissolve(cycle_graph(4), 2) == complete_graph(3)
    assert dissolve(complete_graph(3), 0) == Graph(2, [(0, 1)])
    assert not any(is_twin_pair(c5, x, y) for x in range(5) for y in range(x + 1, 5))
    assert count_cliques(cycle_graph(5), 2) == 5


def test_dissolving_a_subdivided_k4():
    g = subdivide(complete_graph(4))
    while True:
        twos = [v for v in range(g.n) if g.degree(v) == 2]
        if not twos:
            break
        g = dissolve(g, twos[0])
    assert g == complete_graph(4)
