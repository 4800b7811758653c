"""Summation of alternating series.

Two methods are provided for ``sum_{k>=start} (-1)^(k-start) a_k``:

* :func:`sum_direct` adds terms until the next one drops below the target;
  for eventually monotone terms the alternating-tail bound ``|a_{N+1}|``
  is rigorous.
* :func:`sum_cvz` is the Chebyshev acceleration of Cohen, Rodriguez
  Villegas and Zagier. Its weights are integers, computed exactly and
  cached, so the float path only rounds the final ratios ``c_k / d``.

:func:`sum_power_series` covers the non-alternating power series
``sum c_n t^n`` with ``|t| < 1`` that the generating-function identities use.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Optional

from .errors import ConvergenceError, UsageError
from .realcore import EPS, NeumaierSum, PreciseValue

__all__ = ["DecayClass", "SeriesSpec", "SumResult", "sum_direct", "cvz_weights",
           "cvz_float_weights", "default_cvz_terms", "sum_cvz", "sum_power_series",
           "CVZ_RATE", "DEFAULT_TERM_BUDGET"]

CVZ_RATE = 3.0 + math.sqrt(8.0)
DEFAULT_TERM_BUDGET = 10 ** 8


class DecayClass(enum.Enum):
    GEOMETRIC = "geometric"
    POWER_LAW = "power_law"
    IRREGULAR = "irregular"


@dataclass(frozen=True)
class SeriesSpec:
    """Alternating series ``sum_{k>=start} (-1)^(k-start) * term_magnitude(k)``.

    ``monotone_from`` declares the index from which ``|a_k|`` is
    non-increasing (defaults to ``start``); the direct tail bound is only
    trusted from there on. ``power`` qualifies ``POWER_LAW`` decay.
    ``stream``, when given, returns a fresh iterator over the same magnitudes
    from ``start`` on; :func:`sum_direct` prefers it for long runs.
    """

    term_magnitude: Callable[[int], float]
    start: int = 1
    decay: DecayClass = DecayClass.POWER_LAW
    power: Optional[float] = None
    monotone_from: Optional[int] = None
    name: str = "series"
    stream: Optional[Callable[[], Iterator[float]]] = None


@dataclass(frozen=True)
class SumResult:
    value: PreciseValue
    terms_used: int
    method: str  # "direct" | "cvz"

    def __post_init__(self):
        if self.terms_used < 1:
            raise ValueError("terms_used must be >= 1")


def sum_direct(s: SeriesSpec, target_abs_err: float,
               max_terms: int = DEFAULT_TERM_BUDGET) -> SumResult:
    """Partial sums until the first omitted term satisfies ``|a_{N+1}| <= target``."""
    if not target_abs_err > 0:
        raise UsageError("target_abs_err must be positive")
    mono = s.start if s.monotone_from is None else s.monotone_from
    term = s.term_magnitude
    tail = 0.0
    start = s.start
    k = start
    sign = 1.0
    hi = lo = abs_total = 0.0
    isfinite = math.isfinite
    it = s.stream() if s.stream is not None else map(term, itertools.count(start))
    # NeumaierSum.add inlined; this loop can run for millions of terms
    for a in it:
        if not isfinite(a):
            raise ConvergenceError(f"series {s.name!r}: non-finite term at k={k}")
        if k > start and k >= mono and abs(a) <= target_abs_err:
            tail = abs(a)
            break
        if k - start >= max_terms:
            raise ConvergenceError(
                f"series {s.name!r} converges too slowly: {max_terms} terms did not "
                f"reach {target_abs_err:g} (last term {a:.3g})")
        x = sign * a
        t = hi + x
        if abs(hi) >= abs(x):
            lo += (hi - t) + x
        else:
            lo += (x - t) + hi
        hi = t
        abs_total += abs(a)
        sign = -sign
        k += 1
    else:
        raise ConvergenceError(f"series {s.name!r}: term stream ended at k={k}")
    total = NeumaierSum.from_state(hi, lo, k - start, abs_total).result()
    return SumResult(PreciseValue(total.value, total.abs_error + tail),
                     k - s.start, "direct")


def _chebyshev_at_3(n: int) -> int:
    # d_n = ((3+sqrt8)^n + (3-sqrt8)^n)/2 = T_n(3), an integer
    t0, t1 = 1, 3
    if n == 0:
        return 1
    for _ in range(n - 1):
        t0, t1 = t1, 6 * t1 - t0
    return t1


@lru_cache(maxsize=None)
def cvz_weights(n: int) -> tuple[tuple[int, ...], int]:
    """Exact integer weights ``(c_0..c_{n-1}, d)``.

    ``sum_k c_k a_k / d`` approximates ``sum_k (-1)^k a_k``; the signs are
    carried by the ``c_k``.
    """
    if n < 1:
        raise UsageError("need at least one weight")
    d = _chebyshev_at_3(n)
    b = Fraction(-1)
    c = Fraction(-d)
    out = []
    for k in range(n):
        c = b - c
        out.append(c)
        b = b * (k + n) * (k - n) * 2 / ((2 * k + 1) * (k + 1))
    assert all(x.denominator == 1 for x in out)
    return tuple(int(x) for x in out), d


@lru_cache(maxsize=None)
def cvz_float_weights(n: int) -> tuple[float, ...]:
    cs, d = cvz_weights(n)
    return tuple(float(Fraction(c, d)) for c in cs)


def default_cvz_terms(digits: float = 15.0) -> int:
    """ceil(digits * ln 10 / ln(3 + sqrt 8)) + 10."""
    return math.ceil(digits * math.log(10.0) / math.log(CVZ_RATE)) + 10


def _cvz_value(terms: list[float], n: int) -> tuple[float, float, float]:
    acc = NeumaierSum()
    mag = 0.0
    for w, a in zip(cvz_float_weights(n), terms):
        x = w * a
        acc.add(x)
        mag += abs(x)
    return acc.value, acc.error_bound(), mag


def sum_cvz(s: SeriesSpec, n_terms: Optional[int] = None) -> SumResult:
    """CVZ-accelerated value from the first ``n_terms`` terms.

    ``abs_error`` is the larger of the moment-sequence bound
    ``2 |a_start| / (3+sqrt 8)^n`` and the change from the ``n-2`` estimate,
    plus rounding.
    """
    n = default_cvz_terms() if n_terms is None else int(n_terms)
    if n < 4:
        raise UsageError("sum_cvz needs n_terms >= 4")
    terms = [s.term_magnitude(s.start + k) for k in range(n)]
    if not all(math.isfinite(a) for a in terms):
        raise ConvergenceError(f"series {s.name!r}: non-finite term")
    value, rounding, mag = _cvz_value(terms, n)
    previous, _, _ = _cvz_value(terms[: n - 2], n - 2)
    bound = 2.0 * abs(terms[0]) / CVZ_RATE ** n
    err = max(bound, abs(value - previous)) + rounding + 4 * n * EPS * mag
    return SumResult(PreciseValue(value, err), n, "cvz")


def sum_power_series(coeff: Callable[[int], float], t: float, target_abs_err: float,
                     start: int = 1, max_terms: int = DEFAULT_TERM_BUDGET,
                     name: str = "power series") -> SumResult:
    """Direct summation of ``sum_{n>=start} coeff(n) t^n`` for ``|t| < 1``.

    Assumes ``|c_{n+1}/c_n| <= 1 + 2/n`` (true for H_n, H_n^-, H_n^(2) and
    their quotients by powers of n). The tail after N terms is then
    bounded by ``|a_{N+1}| / (1 - rho)`` with ``rho = |t| (1 + 2/N)``.
    """
    if not abs(t) < 1.0:
        raise UsageError("sum_power_series needs |t| < 1")
    if not target_abs_err > 0:
        raise UsageError("target_abs_err must be positive")
    acc = NeumaierSum()
    at = abs(t)
    n = start
    tn = t ** start
    power_err = 0.0
    while True:
        a = coeff(n) * tn
        if not math.isfinite(a):
            raise ConvergenceError(f"{name}: non-finite term at n={n}")
        used = n - start
        rho = at * (1.0 + 2.0 / max(n, 1))
        if used >= 1 and rho < 1.0:
            tail = abs(a) / (1.0 - rho)
            if tail <= target_abs_err:
                break
        if used >= max_terms:
            raise ConvergenceError(f"{name}: {max_terms} terms did not reach {target_abs_err:g}")
        acc.add(a)
        # t^n by repeated multiplication: relative error about n * EPS
        power_err += n * abs(a)
        tn *= t
        n += 1
    total = acc.result()
    err = total.abs_error + tail + EPS * power_err
    return SumResult(PreciseValue(total.value, err), n - start, "direct")
