"""Check records, suite results and their text/JSON renderings."""

from __future__ import annotations

import difflib
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction


PASS, FAIL, FLAGGED = "pass", "fail", "flagged"


def render(obj) -> str:
    """Canonical text for check values; dicts and sets are sorted so output is stable."""
    if isinstance(obj, str):
        return obj
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        items = sorted((render(k), render(v)) for k, v in obj.items())
        return "{" + ", ".join(f"{k}: {v}" for k, v in items) + "}"
    if isinstance(obj, (set, frozenset)):
        return "{" + ", ".join(sorted(render(x) for x in obj)) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(render(x) for x in obj) + "]"
    return str(obj)


@dataclass
class Check:
    name: str
    status: str
    expected: str
    actual: str
    runtime_ms: int = 0

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "expected": self.expected,
                "actual": self.actual, "runtime_ms": self.runtime_ms}


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "checks": [c.as_dict() for c in self.checks]}


class Recorder:
    """Collects checks for one suite.  Runtimes are recorded only when timing is on."""

    def __init__(self, name: str, timing: bool = False):
        self.result = SuiteResult(name)
        self.timing = timing

    def check(self, name: str, expected, actual, flagged: bool = False, ms: int = 0) -> bool:
        ok = expected == actual
        status = PASS if ok else (FLAGGED if flagged else FAIL)
        self.result.checks.append(Check(name, status, render(expected), render(actual), ms if self.timing else 0))
        return ok

    def run(self, name: str, fn, flagged: bool = False) -> bool:
        """fn() -> (expected, actual)."""
        t0 = time.perf_counter()
        expected, actual = fn()
        ms = int((time.perf_counter() - t0) * 1000)
        return self.check(name, expected, actual, flagged=flagged, ms=ms)

    def grid(self, name: str, cases, test) -> bool:
        """Run test(case) -> (ok, detail) over cases; expected is zero mismatches."""
        t0 = time.perf_counter()
        n = 0
        bad = []
        for case in cases:
            n += 1
            ok, detail = test(case)
            if not ok:
                bad.append(detail)
        ms = int((time.perf_counter() - t0) * 1000)
        expected = f"0 mismatches in {n} cases"
        actual = f"{len(bad)} mismatches in {n} cases"
        if bad:
            actual += "; first: " + render(bad[0])
        return self.check(name, expected, actual, ms=ms)


def _diff_lines(text: str) -> list:
    """Split a rendering at its top-level commas so table diffs show one entry per line."""
    if not text or text[0] not in "[{" or text[-1] not in "]}":
        return text.splitlines()
    parts, depth, start = [], 0, 1
    for i, ch in enumerate(text[1:-1], 1):
        if ch in "[{(":
            depth += 1
        elif ch in "]})":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i].strip())
            start = i + 1
    parts.append(text[start:-1].strip())
    return [f"{k}: {p}" for k, p in enumerate(parts)]


def emit_report(results, fmt: str = "text") -> str:
    results = sorted(results, key=lambda r: r.name)
    if fmt == "json":
        return json.dumps({"suites": [r.as_dict() for r in results]}, indent=2)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    totals = {PASS: 0, FAIL: 0, FLAGGED: 0}
    passed = sum(r.status == PASS for r in results)
    for r in results:
        lines.append(f"== {r.name}: {r.status}")
        width = max((len(c.name) for c in r.checks), default=0)
        for c in r.checks:
            totals[c.status] += 1
            ms = f"  {c.runtime_ms} ms" if c.runtime_ms else ""
            lines.append(f"  [{c.status:7}] {c.name:<{width}}{ms}")
            if c.status != PASS:
                diff = difflib.unified_diff(_diff_lines(c.expected), _diff_lines(c.actual),
                                            "expected", "actual", lineterm="")
                lines.extend("      " + d for d in diff)
    lines.append(f"summary: {len(results)} suites ({passed} passed, {len(results) - passed} failed); "
                 f"checks: {totals[PASS]} passed, {totals[FAIL]} failed, {totals[FLAGGED]} flagged")
    return "\n".join(lines) + "\n"
