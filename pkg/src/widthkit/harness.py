"""Sweep a corpus against a named inequality and collect a report."""

from __future__ import annotations

import csv
import io
import json
import time
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import __version__
from .bounds import (
    DEFAULT_BETA,
    DEFAULT_TAU,
    LOG_BASE,
    QuadraticSurd,
    RealBound,
    Undecided,
    bound_genus,
    bound_krr,
    bound_minor,
    bound_nabla1,
    bound_planar,
    bound_topminor,
    clique_bound_minor,
    clique_bound_topminor,
    clique_total_topminor,
    fueredi_sudakov,
    holds,
    ratio,
    wood_clique_bound,
)
from .containment import has_krr_subgraph, has_minor, has_topological_minor, is_planar, nabla1
from .decompositions import SCHEMA, beta
from .errors import ClassViolation, InvalidArgument, ResourceLimit
from .gf2 import cutrank_table, lambda_of_set, lambda_table
from .graph import Graph, clique_counts, degeneracy
from .hypergraph import Hypergraph, hyperedge_bound_check
from .kexpr import compile_rankdec, eval_kexpr, kexpr_width
from .solvers import exact_rankwidth, exact_treewidth


@dataclass(frozen=True)
class Check:
    name: str
    lhs: int | Fraction
    cmp: str
    rhs: object

    @cached_property
    def satisfied(self) -> bool:
        return holds(self.lhs, self.cmp, self.rhs)

    @property
    def ratio(self) -> float | None:
        return ratio(self.lhs, self.rhs)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _show(self.lhs),
            "cmp": self.cmp,
            "rhs": _show(self.rhs),
            "satisfied": self.satisfied,
            "ratio": _round(self.ratio),
        }


def _show(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, (QuadraticSurd, RealBound)):
        return {"exact": str(x), "approx": _round(float(x))}
    return str(x)


def _round(x: float | None):
    return None if x is None else float(f"{x:.12g}")


class Facts:
    """Lazily computed quantities of one graph, shared by all checks."""

    def __init__(self, g: Graph):
        self.g = g

    @cached_property
    def twd(self) -> int:
        return exact_treewidth(self.g)[0]

    @cached_property
    def rankwidth(self):
        return exact_rankwidth(self.g)

    @property
    def rwd(self) -> int:
        return self.rankwidth[0]

    @cached_property
    def compiled(self):
        """(expression, width, C, round trip ok) for the optimal decomposition."""
        g = self.g
        dec = self.rankwidth[1]
        expr, order = compile_rankdec(g, dec)
        ok = eval_kexpr(expr).graph == g.relabel(order)
        return expr, kexpr_width(expr), beta(g, dec), ok

    @property
    def cw(self) -> int:
        return self.compiled[1]

    @cached_property
    def cliques(self) -> list[int]:
        return clique_counts(self.g)

    @cached_property
    def lambdas(self) -> list[int]:
        return lambda_table(self.g)


@dataclass(frozen=True)
class BoundSpec:
    """A named inequality: who it applies to and what to compare.

    ``applies(item, params)`` returns ``None`` when the item is outside the
    class and otherwise a dict of class witnesses.  ``checks(facts, params)``
    returns the comparisons.  Report-only specs never count as violated.
    """

    id: str
    description: str
    item: str
    applies: Callable
    checks: Callable
    defaults: Mapping[str, object] = field(default_factory=dict)
    required: tuple[str, ...] = ()
    report_only: bool = False

    def resolve(self, params: Mapping[str, object] | None) -> dict:
        out = dict(self.defaults)
        for key, val in (params or {}).items():
            if key not in self.defaults and key not in self.required:
                raise InvalidArgument(f"spec {self.id} takes no parameter {key!r}")
            out[key] = val
        missing = [k for k in self.required if out.get(k) is None]
        if missing:
            raise InvalidArgument(f"spec {self.id} needs parameters {missing}")
        return out


REGISTRY: dict[str, BoundSpec] = {}

# short names accepted by ``get_spec`` and the command line
ALIASES = {"eq1": "rwd_vs_twd", "lemma31": "distinct_rows", "thm_planar": "planar"}


def _register(spec: BoundSpec) -> None:
    REGISTRY[spec.id] = spec


def get_spec(spec_id: str) -> BoundSpec:
    try:
        return REGISTRY[ALIASES.get(spec_id, spec_id)]
    except KeyError:
        raise InvalidArgument(f"unknown spec {spec_id!r}; known: {sorted(REGISTRY)}") from None


# applicability predicates

def _any_graph(g, p):
    return {}


def _nonempty(g, p):
    return {} if g.n >= 1 else None


def _has_edge(g, p):
    return {} if g.m >= 1 else None


def _planar_with_edge(g, p):
    return {"planar": True} if g.m >= 1 and is_planar(g) else None


def _krr_free(g, p, need_edge=False):
    if g.n == 0 or (need_edge and g.m == 0) or has_krr_subgraph(g, p["r"]):
        return None
    return {"krr_free": p["r"]}


def _nabla1_le(g, p):
    if g.m == 0:
        return None
    val = nabla1(g)
    return {"nabla1": str(val)} if val <= p["r"] else None


def _topminor_free(g, p, need_edge=False):
    if g.n == 0 or (need_edge and g.m == 0) or has_topological_minor(g, p["r"]):
        return None
    return {"topminor_free": p["r"]}


def _minor_free(g, p):
    if g.m == 0 or has_minor(g, p["r"]):
        return None
    return {"minor_free": p["r"]}


# check builders

def _rwd_vs_twd(f, p):
    return [Check("rwd <= twd + 1", f.rwd, "<=", f.twd + 1)]


def _cw_exponential(f, p):
    return [Check("cw <= 2^(rwd+1) - 1", f.cw, "<=", 2 ** (f.rwd + 1) - 1)]


def _twd_vs_cw(f, p):
    return [Check("twd + 1 <= 3(r-1) cw", f.twd + 1, "<=", 3 * (p["r"] - 1) * f.cw)]


def _twd_vs_rwd(f, p):
    return [Check("twd + 1 <= 3(r-1)(2^(rwd+1) - 1)", f.twd + 1, "<=",
                  3 * (p["r"] - 1) * (2 ** (f.rwd + 1) - 1))]


def _distinct_rows(f, p):
    g = f.g
    cr = cutrank_table(g)
    lam = f.lambdas
    worst = None
    bad = []
    for x in range(1 << g.n):
        lhs = lambda_of_set(g, x)
        chk = Check(f"distinct rows at X={x:#x}", lhs, "<=", lam[cr[x]])
        if not chk.satisfied:
            bad.append(chk)
        if worst is None or Fraction(lhs, chk.rhs) > Fraction(worst.lhs, worst.rhs):
            worst = chk
    return bad or [worst]


def _compile_budget(f, p):
    _, width, c, ok = f.compiled
    return [Check("round trip", int(ok), "==", 1), Check("cw <= 2C + 1", width, "<=", 2 * c + 1)]


def _cw_lambda(f, p):
    return [Check("rwd <= cw", f.rwd, "<=", f.cw),
            Check("cw <= 2 lambda(rwd) - 1", f.cw, "<=", 2 * f.lambdas[f.rwd] - 1)]


def _planar(f, p):
    return [Check("twd < 72 rwd - 1", f.twd, "<", bound_planar(f.rwd)),
            Check("cw < 12 rwd", f.cw, "<", 12 * f.rwd)]


def _surface(f, p):
    b = bound_genus(f.rwd, p["g"])
    return [Check("twd + 1 < 3(2+sqrt(2g))(6 rwd + 5g)", f.twd + 1, "<", b.twd_plus_one),
            Check("cw < 12 rwd + 10g", f.cw, "<", b.cwd)]


def _nabla1_bound(f, p):
    b = bound_nabla1(f.rwd, p["r"])
    return [Check("twd + 1 < 12 r 4^r rwd", f.twd + 1, "<", b.twd_plus_one),
            Check("cw < 2 4^r rwd", f.cw, "<", b.cwd)]


def _krr_bound(f, p):
    b = bound_krr(f.rwd, p["r"])
    return [Check("twd + 1 < 3(r-1) F(rwd)", f.twd + 1, "<", b.twd_plus_one),
            Check("cw < F(rwd)", f.cw, "<", b.cwd)]


def _minor_bound(f, p):
    b = bound_minor(f.rwd, p["r"], p["mu"])
    return [Check("twd + 1 < 6(r-2) 2^(mu r loglog r) rwd", f.twd + 1, "<", b.twd_plus_one),
            Check("cw < 2 2^(mu r loglog r) rwd", f.cw, "<", b.cwd)]


def _topminor_bound(f, p):
    b = bound_topminor(f.rwd, p["r"], p["tau"])
    return [Check("twd + 1 < 3/4 (r^2+4r-5) 2^(tau r log r) rwd", f.twd + 1, "<", b.twd_plus_one),
            Check("cw < 2 2^(tau r log r) rwd", f.cw, "<", b.cwd)]


def _cliques_topminor(f, p):
    n, r = f.g.n, p["r"]
    cc = f.cliques
    return [Check(f"cliques of size {k}", cc[k] if k < len(cc) else 0, "<=",
                  clique_bound_topminor(n, r, k, p["beta"])) for k in range(1, r)]


def _cliques_minor(f, p):
    n, r = f.g.n, p["r"]
    cc = f.cliques
    return [Check(f"cliques of size {k}", cc[k] if k < len(cc) else 0, "<=",
                  clique_bound_minor(n, r, k, p["alpha"])) for k in range(1, r)]


def _cliques_total(f, p):
    return [Check("all cliques <= 2^(tau r log r) n", sum(f.cliques), "<=",
                  clique_total_topminor(f.g.n, p["r"], p["tau"]))]


def _cliques_degenerate(f, p):
    g = f.g
    d = degeneracy(g)
    return [Check(f"cliques <= 2^d (n - d + 1), d={d}", sum(f.cliques), "<=", wood_clique_bound(g.n, d))]


# hypergraph specs

def _hyper_class(kind):
    def applies(h, p):
        try:
            rep = hyperedge_bound_check(h, kind, p["r"])
        except (ClassViolation, InvalidArgument):
            return None
        if not rep.membership_checked:
            return None
        return {kind: p["r"]}
    return applies


def _hyper_check(kind):
    def checks(f, p):
        rep = hyperedge_bound_check(f.g, kind, p["r"])
        return [Check("hyperedges", rep.count, "<=", rep.bound)]
    return checks


def _intersections_applies(h, p):
    k, s = p["k"], p["s"]
    edges = [sum(1 << v for v in e) for e in h.edges]

    def clash(start, depth, common):
        if depth == k:
            return True
        for i in range(start, len(edges)):
            nxt = common & edges[i]
            if nxt.bit_count() >= s and clash(i + 1, depth + 1, nxt):
                return True
        return False

    if len(edges) >= k and clash(0, 0, (1 << h.n) - 1):
        return None
    return {"intersections_below": s}


def _intersections_check(f, p):
    h = f.g
    return [Check("family size", h.m, "<=", fueredi_sudakov(h.n, p["k"], p["s"]))]


_SPECS = [
    BoundSpec("rwd_vs_twd", "rank-width at most tree-width plus one", "graph", _any_graph, _rwd_vs_twd),
    BoundSpec("cw_exponential", "compiled expression width at most 2^(rwd+1) - 1", "graph", _nonempty, _cw_exponential),
    BoundSpec("twd_vs_cw_krr", "Gurski-Wanke inequality with the compiled width", "graph",
              lambda g, p: _krr_free(g, p), _twd_vs_cw, {"r": 2}),
    BoundSpec("twd_vs_rwd_krr", "tree-width against 3(r-1)(2^(rwd+1) - 1)", "graph",
              lambda g, p: _krr_free(g, p), _twd_vs_rwd, {"r": 2}),
    BoundSpec("distinct_rows", "distinct rows of a cut at most lambda(cut-rank)", "graph", _nonempty, _distinct_rows),
    BoundSpec("compile_budget", "compiled expression is correct and uses at most 2C + 1 labels", "graph",
              _has_edge, _compile_budget),
    BoundSpec("cw_lambda", "rwd <= cw <= 2 lambda(rwd) - 1", "graph", _has_edge, _cw_lambda),
    BoundSpec("planar", "planar graphs: twd < 72 rwd - 1 and cw < 12 rwd", "graph",
              _planar_with_edge, _planar),
    BoundSpec("surface", "surface bound (membership certified by planarity)", "graph",
              _planar_with_edge, _surface, {"g": 0}),
    BoundSpec("nabla1", "bounded nabla_1: twd + 1 < 12 r 4^r rwd", "graph", _nabla1_le, _nabla1_bound, {"r": 1}),
    BoundSpec("krr", "no K_{r,r} subgraph: polynomial bound", "graph",
              lambda g, p: _krr_free(g, p, need_edge=True), _krr_bound, {"r": 2}),
    BoundSpec("cliques_topminor", "cliques of each size without a K_r topological minor", "graph",
              _topminor_free, _cliques_topminor, {"r": 4, "beta": DEFAULT_BETA}),
    BoundSpec("cliques_total_topminor", "all cliques without a K_r topological minor", "graph",
              _topminor_free, _cliques_total, {"r": 4, "tau": DEFAULT_TAU}),
    BoundSpec("cliques_degenerate", "cliques of a d-degenerate graph", "graph", _any_graph, _cliques_degenerate),
    BoundSpec("hyper_surface", "hyperedges of a hypergraph on a surface", "hypergraph",
              _hyper_class("genus"), _hyper_check("genus"), {"r": 0}),
    BoundSpec("hyper_nabla1", "hyperedges when nabla_1 of the incidence graph is at most r", "hypergraph",
              _hyper_class("nabla1"), _hyper_check("nabla1"), {"r": 1}),
    BoundSpec("hyper_krr", "hyperedges when the incidence graph has no K_{r,r}", "hypergraph",
              _hyper_class("krr"), _hyper_check("krr"), {"r": 2}),
    BoundSpec("hyper_intersections", "families with small k-wise intersections", "hypergraph",
              _intersections_applies, _intersections_check, {"k": 2, "s": 2}),
    BoundSpec("minor_free", "no K_r minor (needs mu)", "graph", _minor_free, _minor_bound,
              {"r": 4}, ("mu",), report_only=True),
    BoundSpec("topminor_free", "no K_r topological minor", "graph",
              lambda g, p: _topminor_free(g, p, need_edge=True), _topminor_bound,
              {"r": 4, "tau": DEFAULT_TAU}, report_only=True),
    BoundSpec("cliques_minor", "cliques of each size without a K_r minor (needs alpha)", "graph",
              lambda g, p: {} if g.n and not has_minor(g, p["r"]) else None, _cliques_minor,
              {"r": 4}, ("alpha",), report_only=True),
]
for _s in _SPECS:
    _register(_s)


def parse_params(text: str | None) -> dict:
    """``"r=2,tau=451/100"`` to a dict of ints and Fractions."""
    out = {}
    if not text:
        return out
    for part in text.split(","):
        if not part.strip():
            continue
        key, sep, val = part.partition("=")
        if not sep:
            raise InvalidArgument(f"parameter {part!r} is not KEY=VALUE")
        try:
            num = Fraction(val.strip())
        except ValueError:
            raise InvalidArgument(f"parameter {key.strip()} is not a number: {val!r}") from None
        out[key.strip()] = int(num) if num.denominator == 1 else num
    return out


@dataclass
class Row:
    id: str
    n: int
    m: int
    witness: dict
    checks: list[Check]

    @property
    def satisfied(self) -> bool:
        return all(c.satisfied for c in self.checks)

    @property
    def worst(self) -> Check:
        def key(c):
            r = c.ratio
            return (not c.satisfied, -1.0 if r is None else r)
        return max(self.checks, key=key)

    @property
    def ratio(self) -> float | None:
        return self.worst.ratio

    def to_dict(self) -> dict:
        w = self.worst
        return {
            "id": self.id,
            "n": self.n,
            "m": self.m,
            "witness": self.witness,
            "lhs": _show(w.lhs),
            "rhs": _show(w.rhs),
            "satisfied": self.satisfied,
            "ratio": _round(self.ratio),
            "checks": [c.to_dict() for c in self.checks],
        }


@dataclass
class VerificationReport:
    spec_id: str
    params: dict
    report_only: bool
    graphs: int = 0
    not_applicable: int = 0
    rows: list[Row] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def violations(self) -> list[Row]:
        return [row for row in self.rows if not row.satisfied]

    @property
    def ok(self) -> bool:
        return self.report_only or not self.violations

    @property
    def max_ratio(self) -> float | None:
        vals = [row.ratio for row in self.rows if row.ratio is not None]
        return max(vals) if vals else None

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "tool": "widthkit",
            "version": __version__,
            "spec_id": self.spec_id,
            "params": {k: _show(v) for k, v in sorted(self.params.items())},
            "log_base": LOG_BASE,
            "report_only": self.report_only,
            "graphs": self.graphs,
            "checked": len(self.rows),
            "not_applicable": self.not_applicable,
            "violations": [row.id for row in self.violations],
            "max_ratio": _round(self.max_ratio),
            "skipped": self.skipped,
            "rows": [row.to_dict() for row in self.rows],
            "runtime": round(self.runtime, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "n", "m", "satisfied", "lhs", "rhs", "ratio", "witness"])
        for row in self.rows:
            d = row.to_dict()
            w.writerow([d["id"], d["n"], d["m"], d["satisfied"], json.dumps(d["lhs"]),
                        json.dumps(d["rhs"]), d["ratio"], json.dumps(d["witness"], sort_keys=True)])
        return buf.getvalue()


def _evaluate(spec: BoundSpec, params: dict, ident: str, item):
    """One corpus item: ('row', Row), ('na', None) or ('skip', reason)."""
    try:
        witness = spec.applies(item, params)
        if witness is None:
            return "na", None
        facts = Facts(item)
        checks = spec.checks(facts, params)
        for c in checks:
            c.satisfied  # force exact comparison here so errors land in skipped
        m = item.m
        return "row", Row(ident, item.n, m, witness, checks)
    except (ResourceLimit, Undecided) as exc:
        return "skip", f"{type(exc).__name__}: {exc}"


def _evaluate_star(args):
    return _evaluate(*args)


def verify_corpus(corpus: Iterable[tuple[str, object]], spec: BoundSpec | str,
                  params: Mapping[str, object] | None = None, workers: int = 1) -> VerificationReport:
    """Check ``spec`` on every applicable ``(id, item)`` of ``corpus``.

    Items outside the spec's class are counted, items that hit a resource
    limit are listed under ``skipped``; rows keep corpus order.
    """
    if isinstance(spec, str):
        spec = get_spec(spec)
    params = spec.resolve(params)
    kind = Hypergraph if spec.item == "hypergraph" else Graph
    items = list(corpus)
    for ident, item in items:
        if not isinstance(item, kind):
            raise InvalidArgument(f"spec {spec.id} expects {spec.item}s, got {type(item).__name__} for {ident}")
    start = time.perf_counter()
    jobs = [(spec, params, ident, item) for ident, item in items]
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_evaluate_star, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_evaluate(*job) for job in jobs]
    report = VerificationReport(spec.id, params, spec.report_only, graphs=len(items))
    for (ident, _), (tag, val) in zip(items, results):
        if tag == "row":
            report.rows.append(val)
        elif tag == "na":
            report.not_applicable += 1
        else:
            report.skipped.append({"id": ident, "reason": val})
    report.runtime = time.perf_counter() - start
    return report


def lemma31_violations(g: Graph) -> list[int]:
    """Vertex sets ``X`` whose cut has more distinct rows than ``lambda(cutrank(X))``."""
    cr = cutrank_table(g)
    lam = lambda_table(g)
    return [x for x in range(1 << g.n) if lambda_of_set(g, x) > lam[cr[x]]]

