"""Command line: twistlab verify <suite> [options]."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .lie import LieAlgebraError, resolve
from .report import emit_report
from .suites import SUITES, Options, UnknownSuite, run_suites


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _nonnegative(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistlab", description="Exact verification suites for cochain twist quantisation.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help="one of: " + ", ".join(sorted(SUITES) + ["all"]))
    v.add_argument("--order", type=_nonnegative, default=3, help="h order (default 3)")
    v.add_argument("--max-degree", type=_nonnegative, default=4, help="monomial degree bound (default 4)")
    v.add_argument("--algebra", help="catalogue name or definition file")
    v.add_argument("--alpha", type=_fraction, help="alpha as p/q (default: 0, -1/4, -1/2)")
    v.add_argument("--seed", type=int, default=0, help="seed for random property checks (default 0)")
    v.add_argument("--jobs", type=_positive, default=1, help="suites run in parallel (default 1)")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--timing", action="store_true", help="record runtimes (output is then not byte-stable)")
    v.add_argument("--output", help="write the report to this file as well as stdout")
    return parser


def _join_alpha(argv):
    # "--alpha -1/4" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for a in it:
        if a == "--alpha":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--alpha={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_alpha(sys.argv[1:] if argv is None else argv))
    if args.algebra is not None:
        try:
            resolve(args.algebra)
        except (LieAlgebraError, OSError, KeyError) as e:
            parser.error(f"--algebra: {e}")
    opts = Options(order=args.order, max_degree=args.max_degree, algebra=args.algebra, alpha=args.alpha,
                   seed=args.seed, jobs=args.jobs, timing=args.timing)
    try:
        results = run_suites(args.suite, opts)
    except UnknownSuite as e:
        parser.error(str(e))
    text = emit_report(results, args.format)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    return 0 if all(r.status == "pass" for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
