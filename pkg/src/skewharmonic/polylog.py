"""Real dilogarithm and trilogarithm on [-1, 1].

Region map (``t`` the argument):

==============  =====================================================
|t| <= 1/2      power series, ratio <= 1/2
1/2 < t < 1     Li2: Euler reflection; Li3: Landen-type relation
                through Li3(1 - t) and Li3(1 - 1/t)
-1 <= t < -1/2  Li2: duplication onto (1/4, 1]; Li3: CVZ-accelerated
                alternating series
t = 1           zeta(2), zeta(3) directly
==============  =====================================================

Each negative-argument path has an independent twin
(:func:`li2_alternating`, :func:`li3_duplication`) kept for cross-checks.
"""

from __future__ import annotations

import math

from .accel import SeriesSpec, sum_cvz
from .errors import DomainError
from .realcore import CONSTANTS, EPS, PreciseValue

__all__ = ["li2", "li3", "li2_float", "li3_float", "li2_alternating",
           "li3_alternating", "li3_duplication", "log_square_integral"]

_PI = CONSTANTS.pi.value
_ZETA2 = _PI * _PI / 6.0
_ZETA3 = CONSTANTS.zeta3.value
_CVZ_TERMS = 34


def _check(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or abs(t) > 1.0:
        raise DomainError(f"polylog argument must lie in [-1, 1], got {t!r}")
    return t


def _series(t: float, p: int) -> float:
    # sum t^n / n^p for |t| <= 1/2, stopped once terms are below 1e-17 relative
    if t == 0.0:
        return 0.0
    s = 0.0
    c = 0.0
    tn = t
    n = 1
    while True:
        a = tn / n ** p
        x = s + a
        if abs(s) >= abs(a):
            c += (s - x) + a
        else:
            c += (a - x) + s
        s = x
        if abs(a) < 1e-17 * abs(s):
            break
        n += 1
        tn *= t
    return s + c


def li2_alternating(t: float, n_terms: int = _CVZ_TERMS) -> float:
    """Li2(t) for t in [-1, 0) from the accelerated series sum (-1)^n |t|^n / n^2."""
    x = -_check(t)
    spec = SeriesSpec(lambda k: x ** k / (k * k), start=1, name="Li2 alternating")
    return -sum_cvz(spec, n_terms).value.value


def li3_alternating(t: float, n_terms: int = _CVZ_TERMS) -> float:
    x = -_check(t)
    spec = SeriesSpec(lambda k: x ** k / (k * k * k), start=1, name="Li3 alternating")
    return -sum_cvz(spec, n_terms).value.value


def li2_float(t: float) -> float:
    t = _check(t)
    if t == 1.0:
        return _ZETA2
    if abs(t) <= 0.5:
        return _series(t, 2)
    if t > 0.5:
        u = 1.0 - t  # exact for t in [1/2, 1]
        return _ZETA2 - math.log(t) * math.log(u) - _series(u, 2)
    # t in [-1, -1/2): Li2(t) = Li2(t^2)/2 - Li2(-t)
    return 0.5 * li2_float(t * t) - li2_float(-t)


def li3_float(t: float) -> float:
    t = _check(t)
    if t == 1.0:
        return _ZETA3
    if abs(t) <= 0.5:
        return _series(t, 3)
    if t < -0.5:
        return li3_alternating(t)
    lt = math.log(t)
    u = 1.0 - t
    lu = math.log(u)
    rest = (_ZETA3 + lt ** 3 / 6.0 + _ZETA2 * lt - 0.5 * lt * lt * lu)
    return rest - _series(u, 3) - li3_float(1.0 - 1.0 / t)


def li3_duplication(t: float) -> float:
    """Li3(t) for t in [-1, 0) as Li3(t^2)/4 - Li3(-t)."""
    t = _check(t)
    return 0.25 * li3_float(t * t) - li3_float(-t)


def _error(t: float, value: float) -> float:
    # a handful of O(1) components, each rounded a few times
    if t == 0.0:
        return 0.0
    return 16.0 * EPS * max(1.0, abs(value))


def li2(t: float) -> PreciseValue:
    """Dilogarithm sum t^n/n^2 for real t in [-1, 1]."""
    v = li2_float(t)
    return PreciseValue(v, _error(t, v))


def li3(t: float) -> PreciseValue:
    """Trilogarithm sum t^n/n^3 for real t in [-1, 1]."""
    v = li3_float(t)
    return PreciseValue(v, _error(t, v))


def log_square_integral(t: float) -> PreciseValue:
    """Closed form of int_0^t ln^2(1-s)/s ds for t in [-1, 1).

    For 0 < t < 1 this is ln t ln^2(1-t) + 2 ln(1-t) Li2(1-t) - 2 Li3(1-t) + 2 zeta(3).
    For t <= 0 that form needs ln t of a negative number, so the
    Landen-transformed antiderivative is used instead:
    2 Li3(t/(t-1)) + 2 Li3(t) - 2 ln(1-t) Li2(t) - ln^3(1-t)/3.
    """
    t = _check(t)
    if t == 1.0:
        raise DomainError("log_square_integral is finite at t = 1 but not covered here")
    if t == 0.0:
        return PreciseValue(0.0)
    lu = math.log1p(-t)
    if t > 0.0:
        u = 1.0 - t
        v = (math.log(t) * lu * lu + 2.0 * lu * li2_float(u)
             - 2.0 * li3_float(u) + 2.0 * _ZETA3)
    else:
        v = (2.0 * li3_float(t / (t - 1.0)) + 2.0 * li3_float(t)
             - 2.0 * lu * li2_float(t) - lu ** 3 / 3.0)
    return PreciseValue(v, 32.0 * EPS * max(1.0, abs(v)))
