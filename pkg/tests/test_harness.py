import json
from fractions import Fraction

import pytest

from corpora import graphs_upto
from widthkit.bounds import QuadraticSurd
from widthkit.errors import InvalidArgument
from widthkit.graph import Graph, complete_graph, cycle_graph, path_graph
from widthkit.harness import (
    REGISTRY, Check, get_spec, lemma31_violations, parse_params, verify_corpus,
)
from widthkit.hypergraph import Hypergraph, stacked_triangulation, triangulation_hypergraph


def corpus(gs):
    return [(f"g{i}", g) for i, g in enumerate(gs)]


def test_params():
    assert parse_params("r=2,tau=451/100") == {"r": 2, "tau": Fraction(451, 100)}
    assert parse_params("beta=10.5") == {"beta": Fraction(21, 2)}
    assert parse_params(None) == {}
    with pytest.raises(InvalidArgument):
        parse_params("r")
    with pytest.raises(InvalidArgument):
        parse_params("r=two")


def test_unknown_spec_and_missing_constant():
    with pytest.raises(InvalidArgument):
        get_spec("thm99")
    with pytest.raises(InvalidArgument):
        verify_corpus(corpus([complete_graph(3)]), "minor_free")


def test_checks_compare_exactly():
    assert Check("x", 5, "<", QuadraticSurd(2, 1, 10)).satisfied
    assert not Check("x", 6, "<", QuadraticSurd(2, 1, 16)).satisfied
    assert Check("x", 6, "<=", QuadraticSurd(2, 1, 16)).satisfied
    assert Check("x", Fraction(1, 3), "==", Fraction(2, 6)).satisfied


def test_rankwidth_treewidth_sweep():
    rep = verify_corpus(corpus(graphs_upto(5)), "rwd_vs_twd")
    assert rep.ok and rep.graphs == 53 and len(rep.rows) == 53
    assert rep.max_ratio is not None


def test_applicability_is_counted():
    gs = [complete_graph(5), cycle_graph(5), path_graph(4)]
    rep = verify_corpus(corpus(gs), "planar")
    assert rep.not_applicable == 1 and len(rep.rows) == 2 and rep.ok


def test_report_formats():
    rep = verify_corpus(corpus([cycle_graph(5), path_graph(3)]), "krr", {"r": 2})
    d = json.loads(rep.to_json())
    assert d["schema"] == 1 and d["spec_id"] == "krr" and d["params"] == {"r": 2}
    assert d["log_base"] == 2
    assert set(d) >= {"graphs", "violations", "max_ratio", "skipped"}
    lines = rep.to_csv().splitlines()
    assert lines[0].startswith("id,n,m,satisfied") and len(lines) == 3


def test_label_bound_counterexample_is_reported():
    rep = verify_corpus(corpus([Graph(2, [(0, 1)])]), "cw_lambda")
    assert [row.id for row in rep.violations] == ["g0"]


def test_workers_give_the_same_rows():
    gs = corpus(graphs_upto(5))
    a = verify_corpus(gs, "cw_exponential").to_dict()
    b = verify_corpus(gs, "cw_exponential", workers=2).to_dict()
    a.pop("runtime"), b.pop("runtime")
    assert a == b


def test_skipped_on_resource_limit():
    big = Graph(20, [(i, i + 1) for i in range(19)])
    rep = verify_corpus([("big", big)], "rwd_vs_twd")
    assert rep.skipped and rep.skipped[0]["id"] == "big" and not rep.violations


def test_hypergraph_specs():
    g, faces = stacked_triangulation(6)
    h = triangulation_hypergraph(g, faces)
    rep = verify_corpus([("tri", h)], "hyper_surface")
    assert rep.ok and rep.rows[0].checks[0].lhs == 27
    with pytest.raises(InvalidArgument):
        verify_corpus([("g", g)], "hyper_surface")
    fam = Hypergraph(4, [[0, 1], [1, 2], [2, 3], [0, 3]])
    assert verify_corpus([("f", fam)], "hyper_intersections").ok


def test_distinct_rows_bound_on_small_graphs():
    for g in graphs_upto(5):
        assert lemma31_violations(g) == []


def test_report_only_specs():
    gs = corpus([cycle_graph(5)])
    rep = verify_corpus(gs, "topminor_free")
    assert rep.report_only and rep.ok
    rep = verify_corpus(gs, "minor_free", {"mu": 1, "r": 4})
    assert rep.ok
    assert verify_corpus(gs, "cliques_minor", {"alpha": Fraction(1, 2)}).ok


def test_every_registered_spec_runs():
    needs = {"minor_free": {"mu": 1}, "cliques_minor": {"alpha": Fraction(1, 2)}}
    for sid, spec in REGISTRY.items():
        if spec.item == "graph":
            items = corpus([cycle_graph(4), path_graph(3)])
        else:
            items = [("h", Hypergraph(3, [[0], [1, 2]]))]
        verify_corpus(items, sid, needs.get(sid))


def test_short_aliases():
    assert get_spec("eq1").id == "rwd_vs_twd"
    assert get_spec("lemma31").id == "distinct_rows"
    assert get_spec("thm_planar").id == "planar"
