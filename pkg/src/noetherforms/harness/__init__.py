"""Deterministic suites, reports and the command-line front end."""

from .config import SuiteConfig
from .generate import Bounds, Case, generate_case, generate_config
from .report import Record, SuiteResult, VerificationReport, emit_report, parse_report
from .suite import battery, merge, run_suite
