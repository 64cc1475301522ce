"""Command-line entry point ``widthkit``.

Exit codes: 0 ok, 1 violations, 2 usage or parse error, 3 resource limit,
4 partial output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .corpus import GraphClass, enumerate_graphs, sample_class
from .decompositions import SCHEMA, RankDecomposition, beta
from .errors import KExprError, ResourceLimit, ValidationError, WidthkitError
from .harness import get_spec, parse_params, verify_corpus
from .hypergraph import Hypergraph
from .io import from_graph6, read_graph, to_graph6
from .kexpr import compile_rankdec, eval_kexpr, kexpr_width, labels_used, parse_kexpr, serialize_kexpr
from .solvers import exact_rankwidth, exact_treewidth

OK, VIOLATIONS, USAGE, RESOURCE, PARTIAL = 0, 1, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(args):
    try:
        return read_graph(args.input, args.format)
    except OSError as exc:
        raise _Fail(USAGE, f"cannot read {args.input}: {exc.strerror}") from exc


def _write(path, text: str) -> None:
    Path(path).write_text(text)


def cmd_width(args) -> int:
    g = _load(args)
    if args.command == "treewidth":
        width, witness = exact_treewidth(g)
    else:
        width, witness = exact_rankwidth(g)
    print(f"{args.command} {width}")
    if args.witness:
        _write(args.witness, witness.to_json() + "\n")
    return OK


def cmd_compile(args) -> int:
    g = _load(args)
    if args.rankdec:
        try:
            dec = RankDecomposition.from_json(Path(args.rankdec).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise _Fail(USAGE, f"cannot read rank-decomposition {args.rankdec}: {exc}") from exc
        dec.validate(g)
    else:
        dec = exact_rankwidth(g)[1]
    c = beta(g, dec)
    expr, order = compile_rankdec(g, dec, check=args.check)
    verified = eval_kexpr(expr).graph == g.relabel(order)
    _write(args.out, serialize_kexpr(expr) + "\n")
    print(f"C {c}")
    print(f"width {kexpr_width(expr)}")
    print(f"budget {2 * c + 1}")
    print("verified" if verified else "NOT verified")
    return OK if verified else VIOLATIONS


def cmd_eval(args) -> int:
    try:
        text = Path(args.expr).read_text()
    except OSError as exc:
        raise _Fail(USAGE, f"cannot read {args.expr}: {exc.strerror}") from exc
    e = parse_kexpr(text.strip())
    lg = eval_kexpr(e)
    print(f"n {lg.graph.n}")
    print(f"m {lg.graph.m}")
    print(f"labels {len(labels_used(e.root))}")
    if args.out:
        _write(args.out, to_graph6(lg.graph) + "\n")
    return OK


def cmd_gen(args) -> int:
    cls = GraphClass.parse(args.graph_class, args.r)
    if args.n_min < 0 or args.n_max < args.n_min:
        raise _Fail(USAGE, "need 0 <= --n-min <= --n-max")
    if args.exhaustive:
        accept = None if cls.kind == "all" else cls.contains
        graphs = list(enumerate_graphs(args.n_max, accept, n_min=args.n_min))
        if args.count is not None:
            graphs = graphs[:args.count]
        complete, attempts = True, None
    else:
        if args.count is None:
            raise _Fail(USAGE, "--count is required unless --exhaustive is given")
        sample = sample_class(cls, args.n_min, args.n_max, args.count, args.seed, args.max_attempts)
        graphs, complete, attempts = sample.graphs, sample.complete, sample.attempts
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    width = max(5, len(str(len(graphs))))
    entries = []
    for i, g in enumerate(graphs):
        name = f"g{i:0{width}d}.g6"
        (out / name).write_text(to_graph6(g) + "\n")
        entries.append({"file": name, "n": g.n, "m": g.m,
                        "witness": {"class": str(cls), "member": cls.contains(g)}})
    manifest = {
        "schema": SCHEMA,
        "tool": "widthkit",
        "version": __version__,
        "class": str(cls),
        "n_min": args.n_min,
        "n_max": args.n_max,
        "count": args.count,
        "seed": args.seed,
        "exhaustive": args.exhaustive,
        "attempts": attempts,
        "complete": complete,
        "graphs": entries,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {len(graphs)} graphs to {out}")
    if not complete:
        print(f"warning: only {len(graphs)} of {args.count} graphs found in {attempts} draws",
              file=sys.stderr)
        return PARTIAL
    return OK


def load_corpus(path) -> list[tuple[str, object]]:
    """Graphs (``.g6``) and hypergraphs (``.hyp``) from a directory or a file.

    A directory with ``manifest.json`` is read in manifest order, otherwise in
    file-name order.  A multi-line ``.g6`` file yields ids ``<stem>:<line>``.
    """
    path = Path(path)
    if path.is_file():
        files = [path]
    elif path.is_dir():
        manifest = path / "manifest.json"
        if manifest.exists():
            files = [path / e["file"] for e in json.loads(manifest.read_text())["graphs"]]
        else:
            files = sorted(p for p in path.iterdir() if p.suffix in (".g6", ".hyp"))
    else:
        raise _Fail(USAGE, f"corpus {path} does not exist")
    items = []
    for f in files:
        text = f.read_text()
        if f.suffix == ".hyp":
            items.append((f.stem, Hypergraph.from_text(text)))
            continue
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) == 1:
            items.append((f.stem, from_graph6(lines[0])))
        else:
            items += [(f"{f.stem}:{i}", from_graph6(ln)) for i, ln in enumerate(lines)]
    return items


def cmd_verify(args) -> int:
    spec = get_spec(args.spec)
    params = parse_params(args.params)
    corpus = load_corpus(args.corpus)
    report = verify_corpus(corpus, spec, params, workers=args.workers)
    if args.report:
        if str(args.report).endswith(".csv"):
            _write(args.report, report.to_csv())
        else:
            _write(args.report, report.to_json())
    if args.csv:
        _write(args.csv, report.to_csv())
    d = report.to_dict()
    print(f"{spec.id}: {d['graphs']} items, {d['checked']} checked, {d['not_applicable']} not applicable, "
          f"{len(d['skipped'])} skipped, {len(d['violations'])} violations, max ratio {d['max_ratio']}")
    if report.violations and not report.report_only:
        return VIOLATIONS
    if report.skipped:
        return PARTIAL
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="widthkit", description="Exact width parameters and width-bound checks.")
    p.add_argument("--version", action="version", version=f"widthkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    for name in ("rankwidth", "treewidth"):
        s = sub.add_parser(name, help=f"exact {name} of a graph")
        s.add_argument("--input", required=True)
        s.add_argument("--format", choices=("g6", "edgelist"))
        s.add_argument("--witness", help="write the witness decomposition as JSON")
        s.set_defaults(func=cmd_width)

    s = sub.add_parser("compile", help="compile a rank-decomposition into a k-expression")
    s.add_argument("--input", required=True)
    s.add_argument("--format", choices=("g6", "edgelist"))
    s.add_argument("--rankdec", help="rank-decomposition JSON (default: an optimal one)")
    s.add_argument("--out", required=True)
    s.add_argument("--check", action="store_true", help="assert the label invariants at every node")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("eval", help="evaluate a k-expression")
    s.add_argument("--expr", required=True)
    s.add_argument("--out", help="write the graph in graph6")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("gen", help="generate a graph corpus")
    s.add_argument("--class", dest="graph_class", default="all",
                   help="all, planar, minor_free(r), topminor_free(r), krr_free(r), nabla1_le(r)")
    s.add_argument("--r", type=int, help="class parameter")
    s.add_argument("--n-min", type=int, required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--count", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.add_argument("--exhaustive", action="store_true", help="all graphs up to isomorphism")
    s.add_argument("--max-attempts", type=int, help="rejection-sampling draw budget")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", help="check a bound over a corpus")
    s.add_argument("--spec", required=True)
    s.add_argument("--params", help="K=V,... e.g. r=2 or tau=451/100")
    s.add_argument("--corpus", required=True)
    s.add_argument("--report", help="report path (.json or .csv)")
    s.add_argument("--csv", help="also write a CSV report")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return RESOURCE
    except ValidationError as exc:
        print(f"invalid decomposition: {'; '.join(exc.violations)}", file=sys.stderr)
        return USAGE
    except (KExprError, WidthkitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
