"""Verification reports and their JSON/text serializations.

JSON schema (version 1)::

    {"suites": [{"suite": str, "model": str, "params": {str: int},
                 "seed": int, "cases": int,
                 "records": [{"mode": str, "case": int, "check": str,
                              "status": "pass" | "fail" | "expected-nonzero",
                              "residual_monomials": int, "elapsed": float}]}]}

``expected-nonzero`` marks informational demonstrations whose residual is
meant to be nonzero; they never fail a suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import BadFormat

PASS, FAIL, INFO = "pass", "fail", "expected-nonzero"


@dataclass(frozen=True)
class Record:
    mode: str
    case: int
    check: str
    status: str
    residual_monomials: int
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "case": self.case,
            "check": self.check,
            "status": self.status,
            "residual_monomials": self.residual_monomials,
            "elapsed": self.elapsed,
        }


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    model: str
    params: dict
    seed: int
    cases: int
    records: tuple = ()

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "model": self.model,
            "params": dict(sorted(self.params.items())),
            "seed": self.seed,
            "cases": self.cases,
            "records": [r.to_dict() for r in self.records],
        }


@dataclass(frozen=True)
class VerificationReport:
    suites: tuple = field(default_factory=tuple)

    @property
    def records(self):
        for s in self.suites:
            yield from s.records

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.records)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def failures(self) -> list:
        return [r for r in self.records if r.status == FAIL]

    def to_dict(self) -> dict:
        return {"suites": [s.to_dict() for s in self.suites]}


def emit_report(report: VerificationReport, format: str = "json") -> str:
    if format == "json":
        return json.dumps(report.to_dict(), separators=(",", ":"))
    if format == "text":
        return _text(report)
    raise BadFormat(f"unsupported report format {format!r}")


def _text(report: VerificationReport) -> str:
    lines = []
    for s in report.suites:
        params = " ".join(f"{k}={v}" for k, v in sorted(s.params.items()))
        lines.append(f"suite {s.suite}: model {s.model} {params} seed {s.seed} cases {s.cases}")
        header = ("mode", "case", "check", "status", "residual")
        rows = [(r.mode, str(r.case), r.check, r.status, str(r.residual_monomials)) for r in s.records]
        widths = [max([len(h)] + [len(row[i]) for row in rows]) for i, h in enumerate(header)]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        lines.append(fmt.format(*header))
        lines.append(fmt.format(*("-" * w for w in widths)))
        for row in rows:
            lines.append(fmt.format(*row))
        counts = {PASS: 0, FAIL: 0, INFO: 0}
        for r in s.records:
            counts[r.status] += 1
        lines.append(f"{counts[PASS]} pass, {counts[FAIL]} fail, {counts[INFO]} informational")
        lines.append("")
    if not report.suites:
        lines.append("no suites")
    return "\n".join(lines).rstrip() + "\n"


def parse_report(text: str) -> VerificationReport:
    """Inverse of the JSON emitter."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadFormat(f"not a JSON report: {exc}") from exc
    if not isinstance(data, dict) or set(data) != {"suites"}:
        raise BadFormat("report must be an object with a single 'suites' key")
    suites = []
    try:
        for s in data["suites"]:
            records = tuple(Record(**r) for r in s["records"])
            suites.append(SuiteResult(s["suite"], s["model"], dict(s["params"]), s["seed"],
                                      s["cases"], records))
    except (KeyError, TypeError) as exc:
        raise BadFormat(f"malformed report: {exc}") from exc
    return VerificationReport(tuple(suites))
