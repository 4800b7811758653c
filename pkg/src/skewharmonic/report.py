"""JSON and Markdown reports for verification sweeps."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .accel import SeriesSpec, cvz_weights, sum_cvz
from .identities import TOPICS, VerificationResult, registry

__all__ = ["ResultRow", "Summary", "Report", "format_float", "acceleration_contrast"]


def format_float(x: Optional[float]) -> str:
    """17 significant digits; non-finite values become ``null``."""
    if x is None or not math.isfinite(x):
        return "null"
    return "%.17g" % x


def _float_or_none(x) -> Optional[float]:
    return None if x is None else float(x)


@dataclass(frozen=True)
class ResultRow:
    id: str
    route: str
    param: Optional[float]
    lhs: Optional[float]
    rhs: Optional[float]
    residual: float
    tolerance: float
    passed: bool
    paper_anchor: str
    evals: int
    seconds: float
    error: Optional[str] = None

    @classmethod
    def from_result(cls, r: VerificationResult, keep_time: bool = True) -> "ResultRow":
        return cls(r.id, r.route.value, r.param,
                   None if r.lhs is None else r.lhs.value,
                   None if r.rhs is None else r.rhs.value,
                   r.residual, r.tolerance, r.passed, r.paper_anchor, r.evals,
                   r.seconds if keep_time else 0.0, r.error)


@dataclass(frozen=True)
class Summary:
    total: int
    passed: int
    failed: int
    max_residual: float

    @classmethod
    def of(cls, rows: Sequence[ResultRow]) -> "Summary":
        passed = sum(1 for r in rows if r.passed)
        worst = max((r.residual for r in rows), default=0.0)
        return cls(len(rows), passed, len(rows) - passed, worst)


@dataclass
class Report:
    tool_version: str
    timestamp: Optional[str]
    summary: Summary
    results: list[ResultRow] = field(default_factory=list)

    @classmethod
    def from_results(cls, results: Iterable[VerificationResult], tool_version: str,
                     timestamp: bool = True) -> "Report":
        """Build a report; ``timestamp=False`` drops every run-dependent field
        (the timestamp itself and per-result timings)."""
        rows = [ResultRow.from_result(r, keep_time=timestamp) for r in results]
        stamp = None
        if timestamp:
            stamp = datetime.now(timezone.utc).replace(microsecond=0).isoformat().replace("+00:00", "Z")
        return cls(tool_version, stamp, Summary.of(rows), rows)

    @property
    def all_passed(self) -> bool:
        return self.summary.failed == 0

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> str:
        s = self.summary
        out = ["{", f'  "tool_version": {json.dumps(self.tool_version)},']
        if self.timestamp is not None:
            out.append(f'  "timestamp": {json.dumps(self.timestamp)},')
        out.append(f'  "summary": {{"total": {s.total}, "passed": {s.passed}, '
                   f'"failed": {s.failed}, "max_residual": {format_float(s.max_residual)}}},')
        out.append('  "results": [')
        for i, r in enumerate(self.results):
            parts = [
                f'"id": {json.dumps(r.id)}',
                f'"route": {json.dumps(r.route)}',
                f'"param": {format_float(r.param)}',
                f'"lhs": {format_float(r.lhs)}',
                f'"rhs": {format_float(r.rhs)}',
                f'"residual": {format_float(r.residual)}',
                f'"tolerance": {format_float(r.tolerance)}',
                f'"pass": {"true" if r.passed else "false"}',
                f'"paper_anchor": {json.dumps(r.paper_anchor)}',
                f'"evals": {r.evals}',
                f'"seconds": {format_float(r.seconds)}',
            ]
            if r.error is not None:
                parts.append(f'"error": {json.dumps(r.error)}')
            comma = "," if i + 1 < len(self.results) else ""
            out.append("    {" + ", ".join(parts) + "}" + comma)
        out.append("  ]")
        out.append("}")
        return "\n".join(out) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        doc = json.loads(text)
        rows = []
        for d in doc["results"]:
            residual = d["residual"]
            rows.append(ResultRow(
                d["id"], d["route"], _float_or_none(d["param"]),
                _float_or_none(d["lhs"]), _float_or_none(d["rhs"]),
                math.inf if residual is None else float(residual),
                float(d["tolerance"]), bool(d["pass"]), d["paper_anchor"],
                int(d["evals"]), float(d["seconds"]), d.get("error")))
        s = doc["summary"]
        worst = s["max_residual"]
        summary = Summary(int(s["total"]), int(s["passed"]), int(s["failed"]),
                          math.inf if worst is None else float(worst))
        return cls(doc["tool_version"], doc.get("timestamp"), summary, rows)

    # -- Markdown -----------------------------------------------------------

    def to_markdown(self) -> str:
        s = self.summary
        idents = {i.id: i for i in registry()}
        lines = ["# Identity verification report", ""]
        lines.append(f"- tool version: {self.tool_version}")
        if self.timestamp:
            lines.append(f"- generated: {self.timestamp}")
        lines.append(f"- checks: {s.total} ({s.passed} passed, {s.failed} failed)")
        lines.append(f"- max residual: {s.max_residual:.3g}")
        lines.append("")
        by_topic: dict[str, list[ResultRow]] = {}
        for r in self.results:
            topic = idents[r.id].topic if r.id in idents else "Other"
            by_topic.setdefault(topic, []).append(r)
        for topic in [t for t in TOPICS if t in by_topic] + sorted(set(by_topic) - set(TOPICS)):
            lines += [f"## {topic}", "",
                      "| id | route | param | lhs | residual | tolerance | status | anchor |",
                      "|---|---|---|---|---|---|---|---|"]
            for r in by_topic[topic]:
                param = "" if r.param is None else f"{r.param:g}"
                lhs = "n/a" if r.lhs is None else f"{r.lhs:.15g}"
                status = "PASS" if r.passed else "FAIL"
                if r.error:
                    status += f" ({r.error})"
                anchor = r.paper_anchor.replace("|", "\\|")
                lines.append(f"| {r.id} | {r.route} | {param} | {lhs} | {r.residual:.2e} | "
                             f"{r.tolerance:.0e} | {status} | {anchor} |")
            lines.append("")
        lines += ["## Acceleration contrast", "",
                  "Alternating harmonic series sum (-1)^(k-1)/k = ln 2 from its first n terms.", "",
                  "| n | direct error | CVZ error (float) | CVZ error (exact arithmetic) |",
                  "|---|---|---|---|"]
        for n, direct, cvz_f, cvz_x in acceleration_contrast():
            lines.append(f"| {n} | {direct:.3e} | {cvz_f:.3e} | {cvz_x:.3e} |")
        lines.append("")
        return "\n".join(lines)


def ln2_fraction(terms: int = 160) -> Fraction:
    """Rational approximation of ln 2 = sum 1/(k 2^k), error below 2^-terms."""
    return sum((Fraction(1, k * 2 ** k) for k in range(1, terms + 1)), Fraction(0))


def cvz_exact_error(n: int, ln2: Optional[Fraction] = None) -> Fraction:
    """|CVZ_n - ln 2| for the alternating harmonic series, with no rounding."""
    cs, d = cvz_weights(n)
    approx = sum((Fraction(c, k + 1) for k, c in enumerate(cs)), Fraction(0)) / d
    return abs(approx - (ln2_fraction() if ln2 is None else ln2))


def acceleration_contrast(ns: Sequence[int] = (10, 20, 30, 40)) -> list[tuple[int, float, float, float]]:
    """Rows (n, direct error, float CVZ error, exact CVZ error) for sum (-1)^(k-1)/k."""
    ln2 = ln2_fraction()
    ln2_f = float(ln2)
    rows = []
    spec = SeriesSpec(lambda k: 1.0 / k, name="alternating harmonic")
    for n in ns:
        direct = sum(Fraction((-1) ** (k - 1), k) for k in range(1, n + 1))
        cvz = sum_cvz(spec, n).value.value
        rows.append((n, float(abs(direct - ln2)), abs(cvz - ln2_f), float(cvz_exact_error(n, ln2))))
    return rows
