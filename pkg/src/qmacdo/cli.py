"""Command-line front end: ``qmacdo <suite> [options]``.

Exit status is 0 iff every residual is exactly zero, 1 if some check failed
and 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import QMacdoError
from .report import render_lines, render_table
from .suites import SUITES, SuiteConfig, run_suite


def _partition(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "0", "()"):
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a partition: {text!r}") from exc
    if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise argparse.ArgumentTypeError(f"not a partition (positive, non-increasing): {text!r}")
    return parts


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qmacdo",
        description="Exact verification suites for deformed MR/NS operators and super-Macdonald polynomials.",
    )
    p.add_argument("suite_pos", nargs="?", metavar="SUITE", help=f"one of: {', '.join(SUITES)}, all")
    p.add_argument("--suite", help="same as the positional SUITE")
    g = p.add_argument_group("instance")
    g.add_argument("--n", type=int, default=1, help="number of x variables")
    g.add_argument("--m", type=int, default=1, help="number of y variables")
    g.add_argument("--N", type=int, default=1, help="number of z variables (kernel suites)")
    g.add_argument("--M", type=int, default=1, help="number of w variables (kernel suites)")
    g.add_argument("--rmax", type=int, help="largest operator index / u-order")
    g.add_argument("--order", type=int, default=4, help="u-order for hypergeometric series")
    g.add_argument("--deg", type=int, help="z,w-degree or coefficient total degree")
    g.add_argument("--weight", type=int, help="largest partition weight")
    g.add_argument("--lam", type=_partition, help="a single partition, e.g. 2,1")
    g.add_argument("--r", type=int, help="a single operator index (eigen suite)")
    g.add_argument("--K", type=int, default=1, help="rank of the left hypergeometric series")
    g.add_argument("--L", type=int, default=1, help="rank of the right hypergeometric series")
    g.add_argument("--family", choices=("H", "D", "both"), default="both")
    g.add_argument("--trials", type=int, default=50, help="random relations for hc-generators")
    m = p.add_argument_group("parameters")
    m.add_argument("--q", help="rational value of q, e.g. 2/3")
    m.add_argument("--t", help="rational value of t, e.g. 5/2")
    m.add_argument("--symbolic", action="store_true", help="keep q, t as indeterminates")
    m.add_argument("--seed", type=int, default=0, help="seed for random parameter points")
    m.add_argument("--points", type=int, default=2, help="random parameter points in evaluation mode")
    o = p.add_argument_group("output")
    o.add_argument("--out", type=Path, help="write the line-delimited report here")
    o.add_argument("--report", choices=("lines", "table"), default="table", help="stdout format")
    o.add_argument("--timings", action="store_true", help="include elapsed seconds (breaks byte-identity)")
    return p


def _config(args, suite: str) -> SuiteConfig:
    return SuiteConfig(
        suite=suite, n=args.n, m=args.m, N=args.N, M=args.M, rmax=args.rmax, order=args.order,
        deg=args.deg, weight=args.weight, lam=args.lam, r=args.r, K=args.K, L=args.L, q=args.q,
        t=args.t, symbolic=args.symbolic, seed=args.seed, points=args.points, family=args.family,
        trials=args.trials,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    suite = args.suite or args.suite_pos
    if suite is None:
        parser.error("choose a suite")
    if args.suite and args.suite_pos and args.suite != args.suite_pos:
        parser.error("positional SUITE and --suite disagree")
    names = list(SUITES) if suite == "all" else [suite]
    lines, shown, failed = [], [], 0
    try:
        for name in names:
            header, checks = run_suite(_config(args, name))
            lines.append(render_lines(header, checks, args.timings))
            render = render_lines if args.report == "lines" else render_table
            shown.append(render(header, checks, args.timings))
            failed += sum(not c.ok for c in checks)
    except QMacdoError as exc:
        print(f"qmacdo: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write("".join(shown))
    if args.out:
        args.out.write_text("".join(lines))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
