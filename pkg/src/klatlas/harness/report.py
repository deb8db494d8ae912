"""
Records, run configuration and report emission.

JSON-lines reports hold a header, one record per checked permutation sorted
by word, and a closing summary. Wall time goes to the text summary only, so
the JSON output of a suite is byte-identical across runs and job counts.

>>> r = VerificationRecord("demo", 3, parse_perm("213"), Status.PASS, {})
>>> r.to_json()
'{"detail": {}, "n": 3, "status": "pass", "suite": "demo", "w": "213"}'
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, TextIO

from .. import __version__
from ..patterns import PATTERN_CHECKSUMS
from ..permcore import Permutation, parse_perm  # noqa: F401  (doctest)

__all__ = ["Status", "VerificationRecord", "SuiteConfig", "Summary", "header", "write_jsonl",
           "write_text"]


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


@dataclass(frozen=True)
class VerificationRecord:
    suite: str
    n: int
    w: Permutation
    status: Status
    detail: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {"suite": self.suite, "n": self.n, "w": str(self.w),
                "status": self.status.value, "detail": self.detail}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


@dataclass
class SuiteConfig:
    n: int
    jobs: int = 1
    format: str = "json"
    cache: Path | None = None
    time_budget: float | None = None  # seconds; exceeding it only warns
    allow_long: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {self.jobs}")
        if self.format not in ("json", "text"):
            raise ValueError(f"format must be json or text, got {self.format!r}")
        if self.cache is not None:
            self.cache = Path(self.cache)


@dataclass
class Summary:
    suite: str
    n: int
    records: list[VerificationRecord]
    seconds: float = 0.0

    def count(self, status: Status) -> int:
        return sum(1 for r in self.records if r.status is status)

    @property
    def total(self) -> int:
        return len(self.records)

    @property
    def passed(self) -> int:
        return self.count(Status.PASS)

    @property
    def failed(self) -> int:
        return self.count(Status.FAIL)

    @property
    def skipped(self) -> int:
        return self.count(Status.SKIP)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def failures(self) -> list[VerificationRecord]:
        return [r for r in self.records if r.status is Status.FAIL]

    def counts(self) -> dict[str, int]:
        return {"total": self.total, "pass": self.passed, "fail": self.failed,
                "skip": self.skipped}

    def line(self) -> str:
        c = self.counts()
        return (f"{self.suite} n={self.n}: {c['total']} checked, {c['pass']} pass, "
                f"{c['fail']} fail, {c['skip']} skip in {self.seconds:.1f}s")


def header(suite: str, n: int) -> dict[str, Any]:
    return {"record": "header", "suite": suite, "n": n, "version": __version__,
            "checksums": dict(sorted(PATTERN_CHECKSUMS.items()))}


def write_jsonl(summary: Summary, out: TextIO) -> None:
    out.write(json.dumps(header(summary.suite, summary.n), sort_keys=True) + "\n")
    for r in summary.records:
        out.write(r.to_json() + "\n")
    out.write(json.dumps({"record": "summary", "suite": summary.suite, "n": summary.n,
                          **summary.counts()}, sort_keys=True) + "\n")


def write_text(summary: Summary, out: TextIO) -> None:
    for r in summary.failures():
        out.write(f"FAIL {r.suite} {r.w}: {json.dumps(r.detail, sort_keys=True)}\n")
    out.write(summary.line() + "\n")
