"""Verification report types shared by all suites.

A report is a flat list of named checks, each pass/fail/skipped with a
human-readable detail line and an optional witness string.  Reports
serialize to JSON deterministically: keys sorted, checks sorted by name,
and timings isolated in one field so byte-stability can be asserted
modulo elapsed times.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

PASS = "pass"
FAIL = "fail"
SKIP = "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str
    witness: Optional[str] = None
    elapsed_ms: int = 0

    def to_dict(self, include_timings: bool = True):
        out = {"name": self.name, "status": self.status, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = self.witness
        if include_timings:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def timed_check(name: str, thunk, witness_fn=None) -> CheckResult:
    """Run ``thunk`` -> (ok, detail) or (ok, detail, witness) under a timer."""
    start = time.monotonic()
    result = thunk()
    elapsed = int((time.monotonic() - start) * 1000)
    witness = None
    if len(result) == 3:
        ok, detail, witness = result
    else:
        ok, detail = result
    return CheckResult(name, PASS if ok else FAIL, detail, witness, elapsed)


@dataclass
class VerificationReport:
    suite: str
    config: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def add(self, check: CheckResult):
        self.checks.append(check)

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for check in other.checks:
            renamed = CheckResult(
                (prefix + check.name) if prefix else check.name,
                check.status,
                check.detail,
                check.witness,
                check.elapsed_ms,
            )
            self.checks.append(renamed)

    @property
    def ok(self) -> bool:
        return all(check.status != FAIL for check in self.checks)

    def failures(self):
        return [check for check in self.checks if check.status == FAIL]

    def to_dict(self, include_timings: bool = True):
        checks = sorted(self.checks, key=lambda check: check.name)
        return {
            "suite": self.suite,
            "config": self.config,
            "checks": [check.to_dict(include_timings) for check in checks],
            "ok": self.ok,
        }

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings), sort_keys=True, separators=(",", ":")) + "\n"
