"""Residual records, per-suite reports and their JSON / markdown forms."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .. import __version__
from ..errors import SiegelError


class IoFailure(SiegelError):
    """Report could not be written."""


@dataclass(frozen=True)
class Record:
    """One evaluated identity.

    ``sense`` is ``"<="`` for ordinary checks and ``">="`` for sanity checks
    that must *exceed* their threshold (a deliberately broken input).
    ``expected`` carries the predicted value for checks that compare a
    measured quantity against a closed form, e.g. an eigenvalue.
    """

    check: str
    anchor: str
    n: int
    params: dict
    point: str
    residual: float
    tolerance: float
    sense: str = "<="
    expected: float | None = None
    value: float | None = None

    @property
    def passed(self) -> bool:
        if math.isnan(self.residual):
            return False
        if self.sense == ">=":
            return self.residual >= self.tolerance
        return self.residual <= self.tolerance

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = self.passed
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Record":
        d = dict(d)
        d.pop("pass", None)
        return cls(**d)


@dataclass
class SuiteReport:
    id: str
    records: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list:
        return [r for r in self.records if not r.passed]

    def to_dict(self) -> dict:
        return {"id": self.id, "records": [r.to_dict() for r in self.records], "pass": self.passed,
                "wall_time": self.wall_time}

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteReport":
        return cls(d["id"], [Record.from_dict(r) for r in d["records"]], d.get("wall_time", 0.0))


@dataclass
class ResidualReport:
    seed: int
    suites: list = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    @property
    def wall_time(self) -> float:
        return sum(s.wall_time for s in self.suites)

    def to_dict(self) -> dict:
        return {"version": self.version, "seed": self.seed, "suites": [s.to_dict() for s in self.suites],
                "pass": self.passed}

    @classmethod
    def from_dict(cls, d: dict) -> "ResidualReport":
        return cls(d["seed"], [SuiteReport.from_dict(s) for s in d["suites"]], d["version"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ResidualReport":
        return cls.from_dict(json.loads(text))

    def to_markdown(self) -> str:
        lines = [f"# Verification report (version {self.version}, seed {self.seed})", "",
                 f"Overall: **{'PASS' if self.passed else 'FAIL'}**", ""]
        for s in self.suites:
            lines += [f"## {s.id}: {'PASS' if s.passed else 'FAIL'} ({len(s.records)} records, {s.wall_time:.2f} s)",
                      "",
                      "| check | n | params | point | expected | value | residual | tolerance | pass |",
                      "|---|---|---|---|---|---|---|---|---|"]
            for r in s.records:
                params = ", ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
                exp = "" if r.expected is None else f"{r.expected:g}"
                val = "" if r.value is None else f"{r.value:.10g}"
                tol = f"{r.sense} {r.tolerance:.1e}"
                lines.append(f"| {r.check} | {r.n} | {params} | {r.point} | {exp} | {val} | {r.residual:.3e} | {tol} | "
                             f"{'yes' if r.passed else 'NO'} |")
            lines.append("")
        return "\n".join(lines)

    def summary_lines(self) -> list:
        out = []
        for s in self.suites:
            worst = max((r for r in s.records if r.sense == "<="), key=lambda r: r.residual / r.tolerance
                        if r.tolerance else r.residual, default=None)
            tail = f", worst {worst.check} {worst.residual:.2e} / {worst.tolerance:.0e}" if worst else ""
            out.append(f"{s.id:12s} {'PASS' if s.passed else 'FAIL'}  {len(s.records)} records"
                       f"{tail}, {s.wall_time:.1f} s")
        return out


def emit_report(report: ResidualReport, fmt: str, path) -> None:
    if fmt == "json":
        text = report.to_json() + "\n"
    elif fmt == "markdown":
        text = report.to_markdown()
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise IoFailure(f"cannot write report to {path}: {exc}") from exc
