"""Command line entry point: ``prympair {analyze,classify,search,verify}``.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or unreadable
input, 3 no witness found, 4 inconsistent input data.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import coverspec, report, suite
from .classification import HurwitzParams, case_bound_report, classify_range
from .covers import PairDiagram
from .errors import (
    IdentityViolated,
    InconsistentParams,
    NotExponentSix,
    NotFound,
    ParseError,
    PrymError,
)
from .witness import DEFAULT_BUDGET, witness_search

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NOT_FOUND, EXIT_INCONSISTENT = 0, 1, 2, 3, 4
CLASSIFY_SCHEMA = "prympair.classify/1"
SEARCH_SCHEMA = "prympair.search/1"
VERIFY_SCHEMA = "prympair.verify/1"
BUNDLED = ("family_a", "family_b")


def _emit(obj, fmt, human):
    if fmt == "machine":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(human)


def _resolve_input(path):
    """A file path, or ``bundled:family_a`` / ``bundled:family_b``."""
    if path.startswith("bundled:"):
        name = path.split(":", 1)[1]
        if name not in BUNDLED:
            raise FileNotFoundError(f"no bundled diagram {name!r}; choose from {', '.join(BUNDLED)}")
        return resources.files("prympair").joinpath("data", name + ".cover").read_text()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_analyze(args):
    try:
        g1, g2 = coverspec.parse(_resolve_input(args.input))
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        d = PairDiagram.from_covers(g1, g2, component=args.component)
        r = report.analyze_diagram(d)
    except (IdentityViolated, NotExponentSix) as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    except PrymError as e:
        print(f"inconsistent input: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    _emit(r, args.format, report.format_human(r))
    return EXIT_OK


def cmd_classify(args):
    if args.max_d < 2 or args.max_r < 0 or args.min_dim < 0:
        print("error: bounds must be nonnegative and max-d at least 2", file=sys.stderr)
        return EXIT_USAGE
    bounds = None
    if args.case_bounds:
        everything = classify_range(args.max_d, args.max_r, 0, regime=args.regime)
        bounds = case_bound_report(everything)
        rows = [fd for fd in everything if fd.dim_p >= args.min_dim]
    else:
        rows = classify_range(args.max_d, args.max_r, args.min_dim, regime=args.regime)
    if args.format == "machine":
        doc = {
            "schema": CLASSIFY_SCHEMA,
            "bounds": {"max_d": args.max_d, "max_r": args.max_r, "min_dim": args.min_dim},
            "regime": args.regime,
            "rows": [fd.to_dict() for fd in rows],
        }
        if bounds is not None:
            doc["case_bounds"] = bounds
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        sep = args.delimiter
        print(sep.join(("d1", "d2", "r1", "r2", "s1", "s2", "dimP", "family", "case_tag", "regime")))
        for fd in rows:
            print(sep.join(map(str, fd.row() + (fd.regime,))))
        if bounds is not None:
            print()
            for tag, b in bounds.items():
                seen = "empty" if b["max_dim"] is None else f"max dim {b['max_dim']}"
                print(f"{tag}: {seen}, bound {b['bound']}: {'ok' if b['ok'] else 'VIOLATED'}")
    if bounds is not None and not all(b["ok"] for b in bounds.values()):
        return EXIT_FAIL
    return EXIT_OK


def cmd_search(args):
    p = HurwitzParams(*args.params)
    try:
        d = witness_search(p, budget=args.budget, regime=args.regime)
    except InconsistentParams as e:
        print(f"inconsistent parameters: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except NotFound as e:
        if args.format == "machine":
            print(json.dumps({"schema": SEARCH_SCHEMA, "found": False, "exhausted": e.exhausted,
                              "nodes": e.nodes, "params": list(p.as_tuple())}, indent=2))
        else:
            print(f"not found: {e}", file=sys.stderr)
        return EXIT_NOT_FOUND
    text = coverspec.dump_diagram(d, f"witness for (d1, d2, r1, r2, s1, s2) = {p.as_tuple()}")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.format == "machine":
        print(json.dumps({"schema": SEARCH_SCHEMA, "found": True, "params": list(p.as_tuple()),
                          "cover_spec": text}, indent=2))
    elif not args.output:
        print(text, end="")
    return EXIT_OK


def cmd_verify(args):
    out = None if args.format == "machine" else print
    results = suite.run(seed=args.seed, stop_on_failure=not args.keep_going, out=out)
    ok = all(r[1] for r in results) and len(results) == len(suite.PROPERTIES)
    if args.format == "machine":
        print(json.dumps({
            "schema": VERIFY_SCHEMA,
            "seed": args.seed,
            "ok": ok,
            "properties": [{"name": n, "ok": good, "seconds": f"{dt:.3f}", "error": err}
                           for n, good, dt, err in results],
        }, indent=2))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    ap = argparse.ArgumentParser(prog="prympair", description="Prym lattices of pairs of covers of the line.")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("human", "machine"), default="human",
                       help="human-readable text or versioned JSON")

    p = sub.add_parser("analyze", help="full report for a cover-spec file")
    p.add_argument("input", help="cover-spec file, or bundled:family_a / bundled:family_b")
    p.add_argument("--component", type=int, default=None,
                   help="fibre product component to use when it is not connected")
    fmt(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", help="enumerate Prym-Tyurin parameter tuples")
    p.add_argument("--max-d", type=int, default=30)
    p.add_argument("--max-r", type=int, default=100)
    p.add_argument("--min-dim", type=int, default=5)
    p.add_argument("--regime", choices=("both", "ramified", "etale"), default="both")
    p.add_argument("--case-bounds", action="store_true", help="also check the per-case dimension bounds")
    p.add_argument("--delimiter", default="\t")
    fmt(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", help="find a diagram with given parameters")
    p.add_argument("params", type=int, nargs=6, metavar="N", help="d1 d2 r1 r2 s1 s2")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    p.add_argument("--regime", choices=("auto", "etale", "ramified", "any"), default="auto")
    p.add_argument("-o", "--output", help="write the cover spec here")
    fmt(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="run the property suite")
    p.add_argument("--seed", type=int, default=suite.DEFAULT_SEED)
    p.add_argument("--keep-going", action="store_true", help="do not stop at the first failure")
    fmt(p)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # --help exits 0, usage errors exit 2
        return int(e.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
