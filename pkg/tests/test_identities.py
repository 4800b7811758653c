import itertools
import math
from collections import defaultdict

import pytest

from skewharmonic.errors import UsageError
from skewharmonic.harmonic import inner_sums
from skewharmonic.identities import (Route, evaluate, get_identity, registry, resolution,
                                     verify_all)
from skewharmonic.realcore import ClosedForm

EXPECTED_IDS = {
    "SIGMA1", "SIGMA2", "SIGMA", "SIGMA_DECOMP", "EQ1", "EQ2", "EQ3", "INT_HALF", "J1", "J2",
    "LI2_HALF", "LI3_HALF", "GF_H2", "GF_H", "GF_H_N", "EQ5", "EQ6", "LEMMA4", "RAO",
    "ALT_H2_N", "J2_SERIES", "REM2_INT", "REM2_SER", "INNER_REP",
}
SIGMA = 0.0800704710712724


@pytest.fixture(scope="module")
def sweep():
    return verify_all()


def test_registry_contents():
    ids = [i.id for i in registry()]
    assert len(ids) == len(set(ids)) == 24
    assert set(ids) == EXPECTED_IDS


def test_registry_shape():
    for ident in registry():
        assert ident.lhs_routes and ident.tolerance > 0
        assert ident.paper_anchor and ident.description
        assert len(set(ident.routes)) == len(ident.routes)
        if not ident.parametric:
            assert isinstance(ident.rhs, ClosedForm)
    assert get_identity("SIGMA").routes == (Route.SERIES_CVZ, Route.QUAD_2D)
    for name in ("SIGMA1", "SIGMA2", "SIGMA", "J2"):
        routes = set(get_identity(name).routes)
        assert routes & {Route.SERIES_CVZ, Route.SERIES_DIRECT}
        assert routes & {Route.QUAD_1D, Route.QUAD_2D}


def test_grids():
    assert get_identity("EQ2").param_grid == (-1.0, -0.5, 0.0, 0.5, 0.9, 1.0)
    assert -1.0 in get_identity("LEMMA4").param_grid
    assert -1.0 in get_identity("GF_H_N").param_grid
    assert -1.0 not in get_identity("GF_H").param_grid


def test_evaluate_examples():
    r = evaluate("SIGMA", Route.SERIES_CVZ)
    assert r.passed and round(r.lhs.value, 8) == 0.08007047
    r = evaluate("LEMMA4", "POLYLOG_EXPR", 0.0)
    assert r.passed and r.lhs.value == 0.0 and r.rhs.value == 0.0
    r = evaluate("RAO", "series_cvz")
    assert r.passed and r.lhs.value == pytest.approx(0.7512855645, abs=1e-10)
    assert r.rhs.value == pytest.approx(0.7512855644747464, abs=1e-16)


def test_evaluate_usage_errors():
    with pytest.raises(UsageError):
        evaluate("NOPE", Route.SERIES_CVZ)
    with pytest.raises(UsageError):
        evaluate("SIGMA", Route.QUAD_1D)
    with pytest.raises(UsageError):
        evaluate("SIGMA", "NOT_A_ROUTE")
    with pytest.raises(UsageError):
        evaluate("EQ2", Route.QUAD_1D)
    with pytest.raises(UsageError):
        evaluate("SIGMA", Route.SERIES_CVZ, 0.5)
    with pytest.raises(UsageError):
        evaluate("LEMMA4", Route.SERIES_CVZ, 0.5)


def test_route_failure_is_data():
    r = evaluate("GF_H", Route.SERIES_DIRECT, 1.0)
    assert not r.passed and r.error and math.isinf(r.residual)
    r = evaluate("EQ3", Route.QUAD_1D, 1.0)
    assert not r.passed and "DomainError" in r.error


def test_sweep_passes(sweep):
    assert sweep and all(r.passed for r in sweep)
    assert {r.id for r in sweep} == EXPECTED_IDS
    for r in sweep:
        assert r.residual >= 0 and r.passed == (r.residual <= r.tolerance)
        assert r.error is None


def test_sweep_order(sweep):
    keys = [(r.id, r.route.value, (r.param is not None, r.param or 0.0)) for r in sweep]
    assert keys == sorted(keys)


def test_tolerance_overrides():
    assert not any(r.passed for r in verify_all(1e-30))
    assert all(r.passed for r in verify_all(0.1))


def test_resolution_floor():
    assert resolution(0.0, 0.0) == 5e-324
    assert resolution(1.0, -0.5) == 2.0 ** -52


def test_dual_route_consistency(sweep):
    groups = defaultdict(list)
    for r in sweep:
        groups[(r.id, r.param)].append(r)
    pairs = 0
    for rs in groups.values():
        for a, b in itertools.combinations(rs, 2):
            pairs += 1
            assert abs(a.lhs.value - b.lhs.value) <= a.lhs.abs_error + b.lhs.abs_error, (a, b)
    assert pairs > 20


def test_sigma_three_ways():
    series = evaluate("SIGMA", Route.SERIES_CVZ)
    square = evaluate("SIGMA", Route.QUAD_2D)
    closed = series.rhs.value
    values = [series.lhs.value, square.lhs.value, closed]
    for a, b in itertools.combinations(values, 2):
        assert abs(a - b) <= 1e-9
    assert all(round(v, 5) == 0.08007 for v in values)


def test_sigma_partial_sums_bracket():
    inner = inner_sums(10 ** 4 + 1)
    s = c = 0.0
    prev = None
    for n in range(1, 10 ** 4 + 2):
        x = (1 if n % 2 else -1) * inner[n] ** 2 / n
        t = s + x
        c += (s - t) + x if abs(s) >= abs(x) else (x - t) + s
        s = t
        cur = s + c
        if prev is not None and n - 1 >= 5:
            assert min(prev, cur) <= SIGMA <= max(prev, cur), n
        prev = cur


def test_lemma_residuals(sweep):
    rows = [r for r in sweep if r.id == "LEMMA4"]
    assert {r.param for r in rows} == set(get_identity("LEMMA4").param_grid)
    assert all(r.residual <= 1e-10 for r in rows)
    assert any(r.param == -1.0 and r.route is Route.SERIES_CVZ for r in rows)


@pytest.mark.parametrize("t", [-0.75, -0.5, 0.5, 0.75])
@pytest.mark.parametrize("route", [Route.SERIES_DIRECT, Route.QUAD_1D])
def test_eq5_eq6_recombine(t, route):
    a = evaluate("EQ5", route, t)
    b = evaluate("EQ6", route, t)
    rhs = get_identity("LEMMA4").rhs_value(t)
    assert abs(a.lhs.value + b.lhs.value - rhs.value) <= 2e-10


def test_euler_sums_direct_cross_check():
    for ident in ("RAO", "ALT_H2_N", "J2_SERIES"):
        fast = evaluate(ident, Route.SERIES_CVZ)
        slow = evaluate(ident, Route.SERIES_DIRECT)
        assert fast.residual <= 1e-11
        assert slow.residual <= 1e-6
        assert abs(fast.lhs.value - slow.lhs.value) <= 1e-6


def test_off_grid_parameter():
    r = evaluate("EQ2", Route.QUAD_1D, 0.3)
    assert r.passed
    r = evaluate("GF_H2", Route.SERIES_DIRECT, 0.1)
    assert r.passed
