"""Verification suites, report records and the `klatlas` command line."""

from .report import Status, SuiteConfig, Summary, VerificationRecord
from .suites import SUITES, run_suite

__all__ = ["Status", "SuiteConfig", "Summary", "VerificationRecord", "SUITES", "run_suite"]
