import pytest
from hypothesis import given

from strategies import graphs
from widthkit.decompositions import (
    RankDecomposition, TreeDecomposition, beta, rankdec_width, treedec_width, validate_treedec,
)
from widthkit.errors import InvalidArgument, ValidationError
from widthkit.graph import Graph, complete_graph, cycle_graph, path_graph
from widthkit.solvers import exact_rankwidth, exact_treewidth


def caterpillar(n):
    """Leaves 0..n-1 hanging off a path of internal nodes n..2n-3."""
    spine = list(range(n, 2 * n - 2))
    edges = [(spine[0], 0), (spine[-1], n - 1)]
    edges += [(a, b) for a, b in zip(spine, spine[1:])]
    edges += [(spine[i], i + 1) for i in range(n - 2)]
    return RankDecomposition(edges, {v: v for v in range(n)})


def test_caterpillar_is_valid():
    g = cycle_graph(5)
    d = caterpillar(5)
    assert d.violations(g) == []
    assert rankdec_width(g, d) == 2
    assert len(d.edge_cuts()) == 7


def test_rankdec_problems():
    g = path_graph(3)
    with pytest.raises(ValidationError) as info:
        RankDecomposition([(0, 1), (1, 2)], {0: 0, 1: 1, 2: 2}).validate(g)
    assert any("leaf map" in v or "ternary" in v for v in info.value.violations)
    assert RankDecomposition([(3, 0), (3, 1), (3, 2)], {0: 0, 1: 1}).violations(g)
    assert RankDecomposition([], {0: 0}).violations(Graph(1)) == []


def test_json_roundtrip_rankdec():
    d = caterpillar(4)
    back = RankDecomposition.from_json(d.to_json())
    assert back == d
    assert '"schema": 1' in d.to_json()
    with pytest.raises(InvalidArgument):
        RankDecomposition.from_dict({"tree_edges": [[0]]})


def test_treedec_conditions():
    g = path_graph(3)
    good = TreeDecomposition({0: {0, 1}, 1: {1, 2}}, [(0, 1)])
    assert validate_treedec(g, good) == []
    assert treedec_width(good) == 1
    missing_edge = TreeDecomposition({0: {0}, 1: {1, 2}}, [(0, 1)])
    assert any(p.startswith("T1") for p in validate_treedec(g, missing_edge))
    broken = TreeDecomposition({0: {0, 1}, 1: {2}, 2: {1, 2}}, [(0, 1), (1, 2)])
    assert any(p.startswith("T2") for p in validate_treedec(g, broken))
    lost = TreeDecomposition({0: {0, 1}}, [])
    assert any(p.startswith("T3") or p.startswith("T1") for p in validate_treedec(g, lost))
    cyclic = TreeDecomposition({0: {0, 1}, 1: {1, 2}, 2: {1}}, [(0, 1), (1, 2), (2, 0)])
    assert validate_treedec(g, cyclic)


def test_json_roundtrip_treedec():
    d = exact_treewidth(cycle_graph(6))[1]
    assert TreeDecomposition.from_json(d.to_json()) == d


@given(graphs(min_n=2, max_n=7))
def test_beta_sandwich(g):
    w, d = exact_rankwidth(g)
    b = beta(g, d)
    # distinct nonzero rows span a space of rank w, so there are at least w and at most 2^w - 1 of them
    assert w <= b <= 2 ** w - 1 or (w == 0 and b == 0)


def test_widths_of_small_decompositions():
    assert rankdec_width(Graph(1), RankDecomposition([], {0: 0})) == 0
    p4 = path_graph(4)
    d = caterpillar(4)
    assert rankdec_width(p4, d) == 1
    # each cut of the path-order caterpillar leaves one nonzero row pattern per side
    assert beta(p4, d) == 1
    assert beta(Graph(4), d) == 0
    assert beta(complete_graph(4), d) == 1
    assert rankdec_width(complete_graph(4), d) == 1


def test_path_of_bags():
    g = path_graph(4)
    d = TreeDecomposition({0: {0, 1}, 1: {1, 2}, 2: {2, 3}}, [(0, 1), (1, 2)])
    assert validate_treedec(g, d) == [] and d.width() == 1
    one = TreeDecomposition({0: set(range(4))})
    assert validate_treedec(g, one) == [] and one.width() == 3
