import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from widthkit.containment import is_planar
from widthkit.errors import ClassViolation, InvalidArgument
from widthkit.gf2 import BinaryMatrix
from widthkit.graph import degeneracy, star_graph, subdivide, complete_graph
from widthkit.hypergraph import (
    Hypergraph, hyperedge_bound_check, hypergraph_from_matrix_rows, incidence_graph,
    stacked_triangulation, triangulation_hypergraph,
)


def test_incidence_examples():
    assert incidence_graph(Hypergraph(3, [[0, 1, 2]])) == star_graph(3).relabel([1, 2, 3, 0])
    inc = incidence_graph(Hypergraph(2, [[]]))
    assert inc.n == 3 and inc.m == 0


@pytest.mark.parametrize("n", range(3, 9))
def test_incidence_of_complete_graph(n):
    h = Hypergraph(n, combinations(range(n), 2))
    inc = incidence_graph(h)
    assert h.m == n * (n - 1) // 2
    assert degeneracy(inc) == 2
    assert inc.m == subdivide(complete_graph(n)).m


def test_dedupe_and_text_roundtrip():
    h = Hypergraph(4, [[2, 1], [1, 2], [], [3]])
    assert h.m == 3
    text = h.to_text()
    assert text.splitlines()[0] == "4 3"
    assert Hypergraph.from_text(text) == h
    with pytest.raises(InvalidArgument):
        Hypergraph.from_text("3 2\n0 1\n1 0\n")
    with pytest.raises(InvalidArgument):
        Hypergraph(2, [[0, 5]])


def test_matrix_rows():
    ident = BinaryMatrix.from_strings(["100", "010", "001"])
    assert hypergraph_from_matrix_rows(ident) == Hypergraph(3, [[0], [1], [2]])
    zero = BinaryMatrix.from_strings(["000"])
    assert hypergraph_from_matrix_rows(zero) == Hypergraph(3, [[]])
    # column j is vertex j, reading rows left to right
    two = hypergraph_from_matrix_rows(BinaryMatrix.from_strings(["110", "011"]))
    assert sorted(map(sorted, two.edges)) == [[0, 1], [1, 2]]
    with pytest.raises(InvalidArgument):
        hypergraph_from_matrix_rows(BinaryMatrix.from_strings(["11", "11"]))


def test_k4_triangulation_is_tight():
    g, faces = stacked_triangulation(4)
    h = triangulation_hypergraph(g, faces)
    assert h.m == 15
    rep = hyperedge_bound_check(h, "genus", 0)
    assert (rep.count, rep.bound, rep.satisfied) == (15, 15, True)


def test_two_face_triangle_collapses():
    # both faces of a lone triangle are the same vertex triple
    g, faces = stacked_triangulation(3)
    assert triangulation_hypergraph(g, faces).m == 8


@given(st.integers(4, 14), st.integers(0, 2**32))
def test_stacked_triangulations(n, seed):
    g, faces = stacked_triangulation(n, random.Random(seed))
    assert g.m == 3 * n - 6 and len(faces) == 2 * n - 4
    h = triangulation_hypergraph(g, faces)
    assert h.m == 6 * n - 9
    assert is_planar(incidence_graph(h))


def test_triangulation_input_checked():
    g, faces = stacked_triangulation(5)
    with pytest.raises(InvalidArgument):
        triangulation_hypergraph(g, faces[:-1])


def test_bound_checks():
    h = Hypergraph(3, [[]])
    rep = hyperedge_bound_check(h, "genus", 0)
    assert rep.satisfied and rep.bound == 9
    k4 = Hypergraph(4, combinations(range(4), 2))
    # contracting the subdivision stars recovers K4, density 3/2
    with pytest.raises(ClassViolation):
        hyperedge_bound_check(k4, "nabla1", 1)
    rep = hyperedge_bound_check(k4, "nabla1", 2)
    assert rep.bound == 64 and rep.satisfied
    rep = hyperedge_bound_check(k4, "krr", 2)
    assert rep.bound == Fraction(11) and rep.satisfied
    full = Hypergraph(3, [[0, 1], [0, 1, 2]])
    with pytest.raises(ClassViolation):
        hyperedge_bound_check(full, "krr", 2)
    rep = hyperedge_bound_check(Hypergraph(3, [[0, 1], [1, 2], [0, 2]]), "krr", 2)
    assert rep.satisfied and rep.count == 3
    with pytest.raises(InvalidArgument):
        hyperedge_bound_check(h, "nabla1", 0)
    with pytest.raises(InvalidArgument):
        hyperedge_bound_check(h, "krr", 1)
    with pytest.raises(InvalidArgument):
        hyperedge_bound_check(h, "torus", 1)


def test_nonplanar_incidence_under_genus():
    k5 = Hypergraph(5, combinations(range(5), 2))
    with pytest.raises(ClassViolation):
        hyperedge_bound_check(k5, "genus", 0)
    rep = hyperedge_bound_check(k5, "genus", 1)
    assert not rep.membership_checked
