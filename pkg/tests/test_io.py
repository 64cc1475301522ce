import networkx as nx
import pytest
from hypothesis import given

from strategies import graphs
from widthkit.errors import InvalidArgument
from widthkit.graph import Graph, complete_graph, cycle_graph
from widthkit.io import from_edgelist, from_graph6, read_graph, to_edgelist, to_graph6


def test_known_codes():
    assert to_graph6(complete_graph(5)) == "D~{"
    assert to_graph6(Graph(0)) == "?"
    assert to_graph6(cycle_graph(5), header=True).startswith(">>graph6<<")


@given(graphs(max_n=12))
def test_graph6_roundtrip_and_networkx(g):
    code = to_graph6(g)
    assert from_graph6(code) == g
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    assert nx.to_graph6_bytes(h, header=False).decode().strip() == code


def test_large_n_encoding():
    g = Graph(70, [(0, 69)])
    assert from_graph6(to_graph6(g)) == g


@given(graphs(max_n=10))
def test_edgelist_roundtrip(g):
    assert from_edgelist(to_edgelist(g)) == g


def test_bad_inputs():
    with pytest.raises(InvalidArgument):
        from_graph6("D~")
    with pytest.raises(InvalidArgument):
        from_edgelist("3 1\n0 5\n")


def test_read_graph_by_suffix(tmp_path):
    p = tmp_path / "k5.g6"
    p.write_text("D~{\n")
    assert read_graph(p) == complete_graph(5)
    q = tmp_path / "c5.txt"
    q.write_text(to_edgelist(cycle_graph(5)))
    assert read_graph(q) == cycle_graph(5)
