"""Seeded verification suites, residual reports and the command-line harness."""
from .report import IoFailure, Record, ResidualReport, SuiteReport, emit_report
from .suites import SUITES, SuitePlan, run_plans, run_suite, sample_rng
from .cli import cli_main

__all__ = ["IoFailure", "Record", "ResidualReport", "SuiteReport", "emit_report", "SUITES", "SuitePlan",
           "run_plans", "run_suite", "sample_rng", "cli_main"]
