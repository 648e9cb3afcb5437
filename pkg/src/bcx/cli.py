"""``bcx`` command line: analyze matroids, graphs and arrangements, run sweeps.

Exit codes: 0 success, 1 invariant violation or failed sweep, 2 invalid
input, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path
from typing import Any, Sequence

from . import io
from .broken import Ordering
from .classification import classify_matroid
from .errors import BcxError, CapExceeded, InvalidInput
from .graphs import triangulation_analysis, wilf_ordering, wilf_report
from .invariants import chromatic_polynomials
from .matroid import cycle_matroid
from .orlik_terao import classify_arrangement, groebner_verify, underlying_matroid
from .verify import SUITES, VerifyConfig, replay, run


def _ordering(args: argparse.Namespace, n: int) -> Ordering | None:
    if args.ordering is None:
        return None
    order = io.parse_ordering_arg(args.ordering)
    order.check(n)
    return order


def cmd_matroid(args: argparse.Namespace) -> dict[str, Any]:
    M = io.matroid_from_json(io.load(args.input))
    order = _ordering(args, M.n)
    report = classify_matroid(M, order, budget=args.budget, find_ordering=args.find_ordering,
                              workers=args.workers)
    return report.to_json()


def cmd_graph(args: argparse.Namespace) -> dict[str, Any]:
    data = io.load(args.input)
    g = io.graph_from_json(data)
    tri = io.triangulation_from_json(data)
    order = _ordering(args, g.n_edges)
    pair = chromatic_polynomials(g, order)
    out: dict[str, Any] = {
        "vertices": g.vertices,
        "edges": g.n_edges,
        "chromatic": pair.whitney.format(),
        "chromatic_coefficients": pair.whitney.to_json(),
        "chromatic_engines_agree": pair.agree,
    }
    if not pair.agree:
        out["chromatic_deletion_contraction"] = pair.delcon.format()
    M = cycle_matroid(g)
    out["matroid"] = classify_matroid(M, order, budget=args.budget, find_ordering=args.find_ordering,
                                      workers=args.workers).to_json()
    if tri is not None and tri.is_polygon:
        res = triangulation_analysis(tri)
        out["triangulation"] = {"ordering": list(res.ordering.sequence), "ci": res.ci,
                                "degrees": list(res.degrees)}
    elif tri is not None:
        rep = wilf_report(tri)
        out["wilf"] = {
            "holds": rep.holds,
            "rows": [{"p": r.p, "a": r.a, "b": r.b, "b_triangle_free": r.b_triangle_free, "slack": r.slack}
                     for r in rep.rows],
        }
        try:
            w = wilf_ordering(tri)
            out["wilf"].update(ordering=list(w.ordering.sequence), count=w.count, required=w.required,
                               small_case=w.small_case, triangle_free_dual=w.triangle_free_dual)
        except CapExceeded as exc:
            out["wilf"]["ordering_search"] = f"cap exceeded: {exc}"
    return out


def cmd_arrangement(args: argparse.Namespace) -> dict[str, Any]:
    a = io.arrangement_from_json(io.load(args.input))
    M = underlying_matroid(a)
    order = _ordering(args, a.n)
    if order is None and not args.find_ordering:
        order = Ordering.natural(a.n)
    out = classify_arrangement(a, budget=args.budget, workers=args.workers, order=order, kind=args.order)
    gb = out["groebner"]
    out["groebner_matches"] = gb["is_groebner"] and gb["matches_stanley_reisner"]
    out["initial"] = gb["initial"]
    if args.orderings:
        rng = random.Random(args.seed)
        samples = []
        for _ in range(args.orderings):
            o = Ordering.random(a.n, rng)
            g = groebner_verify(a, o, args.order, M)
            samples.append({"ordering": list(o.sequence), "is_groebner": g.is_groebner,
                            "matches_stanley_reisner": g.matches_stanley_reisner,
                            "initial": g.initial.strings()})
        out["sampled_orderings"] = samples
        out["groebner_matches"] = out["groebner_matches"] and all(
            s["is_groebner"] and s["matches_stanley_reisner"] for s in samples)
    return out


def cmd_verify(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    if args.replay:
        try:
            replay(args.replay)
        except AssertionError as exc:
            return {"replay": args.replay, "passed": False, "reason": str(exc)}, 1
        return {"replay": args.replay, "passed": True}, 0
    if args.suite is None:
        raise InvalidInput("name a suite or pass --replay")
    cfg = VerifyConfig(suite=args.suite, seed=args.seed if args.seed is not None else 0,
                       size=args.budget, orderings=args.orderings, dump_dir=Path(args.dump_dir))
    results = run(cfg)
    summary = {
        "seed": cfg.seed,
        "suites": [{"suite": r.name, "checked": r.checked, "passed": r.passed,
                    "failures": len(r.failures), "dumped": r.dumped} for r in results],
        "passed": all(r.passed for r in results),
    }
    return summary, 0 if summary["passed"] else 1


def render_text(data: Any, indent: int = 0) -> str:
    """Indented ``key: value`` lines; nested mappings and record lists become blocks."""
    pad = "  " * indent
    if isinstance(data, dict):
        lines = []
        for k in sorted(data):
            v = data[k]
            if isinstance(v, dict) or (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(data, list):
        return "\n".join(f"{pad}-\n{render_text(x, indent + 1)}" if isinstance(x, dict)
                         else f"{pad}- {_scalar(x)}" for x in data)
    return pad + _scalar(data)


def _scalar(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bcx", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=None, help="search budget (verify: corpus size)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--orderings", type=int, default=None, help="number of sampled orderings (needs --seed)")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("matroid", "analyze a matroid file"), ("graph", "analyze a graph file"),
                           ("arrangement", "analyze an arrangement matrix file")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input")
        group = p.add_mutually_exclusive_group()
        group.add_argument("--ordering", help="comma-separated labels, smallest first")
        group.add_argument("--find-ordering", action="store_true", help="search for a CI ordering")
        if name == "arrangement":
            p.add_argument("--order", choices=("lex", "degrevlex"), default="degrevlex")

    p = sub.add_parser("verify", parents=[common], help="run a property sweep")
    p.add_argument("suite", nargs="?", choices=SUITES + ("all",))
    p.add_argument("--dump-dir", default="counterexamples")
    p.add_argument("--replay", help="re-run a dumped counterexample")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    code = 0
    try:
        if args.orderings is not None and args.command != "verify" and args.seed is None:
            raise InvalidInput("--orderings samples random orderings and needs --seed")
        if args.command == "matroid":
            out = cmd_matroid(args)
        elif args.command == "graph":
            out = cmd_graph(args)
        elif args.command == "arrangement":
            out = cmd_arrangement(args)
        else:
            out, code = cmd_verify(args)
    except BcxError as exc:
        print(f"bcx: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(io.dumps(out) if args.format == "json" else render_text(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
