"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.
"""

import itertools
import math
import subprocess
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

import pytest

from skewharmonic.accel import SeriesSpec, cvz_weights, sum_cvz
from skewharmonic.harmonic import inner_sums
from skewharmonic.identities import Route, evaluate, get_identity
from skewharmonic.polylog import li2, li3
from skewharmonic.quad import gl_nodes
from skewharmonic.realcore import eval_closed_form
from skewharmonic.report import acceleration_contrast, ln2_fraction

SIGMA1 = 0.4112335167120566
MINUS_SIGMA2 = 0.0289950930217387
CLI = [sys.executable, "-m", "skewharmonic"]


def report(number: int, ok: bool, detail: str, terminal=None) -> None:
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    if terminal is None:
        print(line, flush=True)
    else:
        # pytest captures stdout; its terminal writer does not
        terminal.write_line("")
        terminal.write_line(line)


def criterion_1():
    start = time.perf_counter()
    series = evaluate("SIGMA", Route.SERIES_CVZ)
    square = evaluate("SIGMA", Route.QUAD_2D)
    closed = eval_closed_form(get_identity("SIGMA").rhs).value
    elapsed = time.perf_counter() - start
    values = [series.lhs.value, square.lhs.value, closed]
    worst = max(abs(a - b) for a, b in itertools.combinations(values, 2))
    ok = worst <= 1e-9 and all(f"{v:.5f}" == "0.08007" for v in values) and elapsed < 1.0
    return ok, f"sigma series/2D/closed max diff {worst:.2e}, value {closed:.10f}, {elapsed:.3f} s"


def criterion_2():
    start = time.perf_counter()
    a = evaluate("SIGMA1", Route.SERIES_CVZ)
    b = evaluate("SIGMA1", Route.QUAD_2D)
    elapsed = time.perf_counter() - start
    errs = [abs(a.lhs.value - SIGMA1), abs(b.lhs.value - SIGMA1)]
    ok = max(errs) <= 1e-9 and f"{SIGMA1:.10f}" == "0.4112335167" and elapsed < 1.0
    return ok, f"sigma1 series err {errs[0]:.2e}, 2D err {errs[1]:.2e}, {elapsed:.3f} s"


def criterion_3():
    a = evaluate("SIGMA2", Route.SERIES_CVZ)
    b = evaluate("SIGMA2", Route.QUAD_2D)
    closed = a.rhs.value
    errs = [abs(a.lhs.value - closed), abs(b.lhs.value - closed)]
    ok = max(errs) <= 1e-8 and f"{closed:.7f}" == "-0.0289951" and abs(closed + MINUS_SIGMA2) < 1e-15
    return ok, f"sigma2 = {closed:.10f}; series err {errs[0]:.2e}, 2D err {errs[1]:.2e}"


def criterion_4():
    start = time.perf_counter()
    p = subprocess.run(CLI + ["verify"], capture_output=True, text=True, check=False)
    elapsed = time.perf_counter() - start
    line = p.stdout.strip().splitlines()[-1] if p.stdout.strip() else p.stderr.strip()
    ok = p.returncode == 0 and line.startswith("24 identities") and " 0 failed" in line and elapsed < 10
    return ok, f"exit {p.returncode}, '{line}', {elapsed:.2f} s"


def criterion_5():
    parts, ok = [], True
    for ident in ("RAO", "ALT_H2_N"):
        fast = evaluate(ident, Route.SERIES_CVZ)
        slow = evaluate(ident, Route.SERIES_DIRECT)
        good = fast.residual <= 1e-11 and slow.residual <= 1e-6
        ok &= good
        parts.append(f"{ident} CVZ {fast.residual:.1e}, direct {slow.residual:.1e}")
    return ok, "; ".join(parts)


def criterion_6():
    ln2 = ln2_fraction()
    spec = SeriesSpec(lambda k: 1.0 / k, name="alternating harmonic")
    err40 = abs(sum_cvz(spec, 40).value.value - math.log(2))
    exact = {}
    for n in range(10, 41):
        cs, d = cvz_weights(n)
        approx = sum((Fraction(c, k + 1) for k, c in enumerate(cs)), Fraction(0)) / d
        exact[n] = abs(approx - ln2)
    rate = float(exact[10] / exact[40]) ** (1 / 30)
    steps = [float(exact[n] / exact[n + 1]) for n in range(10, 40)]
    direct40 = abs(sum(Fraction((-1) ** (k - 1), k) for k in range(1, 41)) - ln2)
    rows = acceleration_contrast()
    ok = err40 <= 1e-12 and rate >= 3 and float(direct40) > 1e-2 and len(rows) == 4
    return ok, (f"CVZ(40) err {err40:.1e}; exact-arithmetic rate {rate:.2f}/term over [10,40] "
                f"(single steps {min(steps):.2f}..{max(steps):.2f}); direct(40) err {float(direct40):.3e}")


def criterion_7():
    checks = {}
    grid = [i / 49 for i in range(50)]
    checks["Li2 duplication"] = max(abs(li2(t).value + li2(-t).value - 0.5 * li2(t * t).value) for t in grid)
    checks["Li3 duplication"] = max(abs(li3(t).value + li3(-t).value - 0.25 * li3(t * t).value) for t in grid)
    checks["Li2 reflection"] = max(
        abs(li2(t).value + li2(1 - t).value - (math.pi ** 2 / 6 - math.log(t) * math.log1p(-t)))
        for t in [i / 50 for i in range(1, 50)])
    gl = 0.0
    for n in range(1, 21):
        r = gl_nodes(n)
        for d in range(2 * n):
            exact = 0.0 if d % 2 else 2.0 / (d + 1)
            gl = max(gl, abs(sum(w * x ** d for x, w in zip(r.nodes, r.weights)) - exact))
    checks["GL exactness"] = gl
    inner = inner_sums(10 ** 4)
    checks["inner recurrence"] = max(abs(inner[n] + inner[n - 1] - 1 / n) for n in range(1, 10 ** 4 + 1))
    limits = {k: 1e-12 for k in checks}
    sigma = eval_closed_form(get_identity("SIGMA").rhs).value
    s, prev, bracket_ok = 0.0, None, True
    full = inner_sums(10 ** 4 + 1)
    c = 0.0
    for n in range(1, 10 ** 4 + 2):
        x = (1 if n % 2 else -1) * full[n] ** 2 / n
        t = s + x
        c += (s - t) + x if abs(s) >= abs(x) else (x - t) + s
        s = t
        if prev is not None and n - 1 >= 5:
            bracket_ok &= min(prev, s + c) <= sigma <= max(prev, s + c)
        prev = s + c
    rec = 0.0
    lemma = get_identity("LEMMA4")
    for t in (-0.75, -0.5, 0.5, 0.75):
        for route in (Route.SERIES_DIRECT, Route.QUAD_1D):
            total = evaluate("EQ5", route, t).lhs.value + evaluate("EQ6", route, t).lhs.value
            rec = max(rec, abs(total - lemma.rhs_value(t).value))
    checks["EQ5+EQ6 vs lemma"] = rec
    limits["EQ5+EQ6 vs lemma"] = 2e-10
    ok = bracket_ok and all(checks[k] <= limits[k] for k in checks)
    detail = ", ".join(f"{k} {v:.1e}" for k, v in checks.items())
    return ok, f"{detail}, sigma bracketing {'ok' if bracket_ok else 'broken'}"


def criterion_8():
    with tempfile.TemporaryDirectory() as d:
        paths = [Path(d) / "a.json", Path(d) / "b.json"]
        codes = [subprocess.run(CLI + ["verify", "--no-timestamp", "--json", str(p)],
                                capture_output=True, check=False).returncode for p in paths]
        a, b = (p.read_bytes() for p in paths)
    ok = codes == [0, 0] and a == b
    return ok, f"exit codes {codes}, {len(a)} bytes, identical={a == b}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_acceptance(number, request):
    ok, detail = CRITERIA[number - 1]()
    report(number, ok, detail, request.config.pluginmanager.get_plugin("terminalreporter"))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for i, crit in enumerate(CRITERIA, 1):
        ok, detail = crit()
        report(i, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
