"""Command-line entry point: ``siegel-verify --suite all --seed 1``."""
from __future__ import annotations

import argparse
import sys

from ..errors import InvalidPlan
from ..maassops import FDConfig
from ..matrixcore import Tolerances
from .report import IoFailure, ResidualReport, emit_report
from .suites import SUITES, SUPPORTED_DEGREES, SuitePlan, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_PLAN = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="siegel-verify",
                                description="Run seeded numerical verification suites and report residuals.")
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)} or 'all'")
    p.add_argument("--degree", default=None, help="comma-separated degrees n (default: per suite)")
    p.add_argument("--samples", type=int, default=None, help="samples per degree (default: per suite)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol-fd1", type=float, default=Tolerances.fd_tol_1, help="first-order tolerance")
    p.add_argument("--tol-fd2", type=float, default=Tolerances.fd_tol_2, help="second-order tolerance")
    p.add_argument("--fd-step", type=float, default=FDConfig.h_rel, help="first-derivative step h_rel")
    p.add_argument("--report", default=None, help="write the full report to this path")
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    p.add_argument("--jobs", type=int, default=1, help="worker threads per suite")
    return p


def _degrees(text):
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise InvalidPlan(f"bad degree list {text!r}") from exc


def make_plans(args) -> list:
    names = SUITES if args.suite == "all" else (args.suite,)
    if args.suite != "all" and args.suite not in SUITES:
        raise InvalidPlan(f"unknown suite {args.suite!r}")
    degrees = _degrees(args.degree)
    try:
        tol = Tolerances(fd_tol_1=args.tol_fd1, fd_tol_2=args.tol_fd2)
        fd = FDConfig(h_rel=args.fd_step)
    except ValueError as exc:
        raise InvalidPlan(str(exc)) from exc
    plans = []
    for name in names:
        d = degrees
        if d is not None and args.suite == "all":
            # with 'all', run each suite on the requested degrees it supports
            d = tuple(n for n in d if n in SUPPORTED_DEGREES[name])
            if not d:
                continue
        plans.append(SuitePlan(name, d, args.samples, args.seed, tol, fd, args.jobs))
    if not plans:
        raise InvalidPlan("no suite supports the requested degrees")
    return plans


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PLAN if exc.code else EXIT_PASS
    try:
        plans = make_plans(args)
    except InvalidPlan as exc:
        print(f"invalid plan: {exc}", file=sys.stderr)
        return EXIT_PLAN
    report = ResidualReport(args.seed)
    for plan in plans:
        suite = run_suite(plan)
        report.suites.append(suite)
        print(ResidualReport(args.seed, [suite]).summary_lines()[0], flush=True)
        for r in suite.failures()[:5]:
            print(f"    FAIL {r.check} n={r.n} {r.params} residual {r.residual:.3e} {r.sense} {r.tolerance:.1e}")
    if args.report:
        try:
            emit_report(report, args.format, args.report)
        except IoFailure as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_PLAN
    print(f"overall: {'PASS' if report.passed else 'FAIL'} ({report.wall_time:.1f} s)")
    return EXIT_PASS if report.passed else EXIT_FAIL


def main():
    sys.exit(cli_main())
