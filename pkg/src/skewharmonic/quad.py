"""Gauss-Legendre rules, adaptive 1-D integration with optional tanh-sinh
endpoint treatment, and tensor-product rules on the unit square.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Union

from .errors import QuadratureError, UsageError
from .realcore import NeumaierSum, PreciseValue

__all__ = ["QuadRule", "QuadResult", "gl_nodes", "integrate_1d",
           "integrate_unit_square", "PANEL_BUDGET", "EVAL_BUDGET"]

PANEL_BUDGET = 10_000
EVAL_BUDGET = 10_000_000

_LOW, _HIGH = 15, 31
_SQUARE_ORDERS = (16, 32, 64)


@dataclass(frozen=True)
class QuadRule:
    nodes: tuple[float, ...]
    weights: tuple[float, ...]
    order: int


@dataclass(frozen=True)
class QuadResult:
    value: PreciseValue
    panels: int
    evals: int


def _legendre(n: int, x: float) -> tuple[float, float]:
    """P_n(x) and P_{n-1}(x) by the three-term recurrence."""
    p0, p1 = 1.0, x
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    return p1, p0


@lru_cache(maxsize=None)
def gl_nodes(order: int) -> QuadRule:
    """Gauss-Legendre rule on [-1, 1] with ``order`` nodes (1 <= order <= 128)."""
    if not isinstance(order, int) or not 1 <= order <= 128:
        raise UsageError(f"Gauss-Legendre order must be in 1..128, got {order!r}")
    n = order
    half = []
    for i in range(1, n // 2 + 1):
        x = math.cos(math.pi * (i - 0.25) / (n + 0.5))
        for _ in range(100):
            p, pm = _legendre(n, x)
            dp = n * (x * p - pm) / (x * x - 1.0)
            dx = p / dp
            x -= dx
            if abs(dx) <= 1e-16:
                break
        p, pm = _legendre(n, x)
        dp = n * (x * p - pm) / (x * x - 1.0)
        half.append((x, 2.0 / ((1.0 - x * x) * dp * dp)))
    nodes, weights = [], []
    for x, w in reversed(half):
        nodes.append(-x)
        weights.append(w)
    if n % 2:
        _, pm = _legendre(n, 0.0)
        # at x = 0, P'_n = n P_{n-1}(0)
        dp = n * pm
        nodes.append(0.0)
        weights.append(2.0 / (dp * dp))
    for x, w in half:
        nodes.append(x)
        weights.append(w)
    return QuadRule(tuple(nodes), tuple(weights), n)


class _Counter:
    __slots__ = ("f", "evals")

    def __init__(self, f):
        self.f = f
        self.evals = 0

    def __call__(self, x: float) -> float:
        self.evals += 1
        if self.evals > EVAL_BUDGET:
            raise QuadratureError(f"evaluation budget of {EVAL_BUDGET} exceeded")
        y = self.f(x)
        if not math.isfinite(y):
            raise QuadratureError(f"integrand not finite at x={x!r}")
        return y


def _gl_panel(f, a: float, b: float, rule: QuadRule) -> float:
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    acc = NeumaierSum()
    for x, w in zip(rule.nodes, rule.weights):
        acc.add(w * f(c + h * x))
    return h * acc.value


def _adaptive(f: _Counter, a: float, b: float, tol: float):
    lo, hi = gl_nodes(_LOW), gl_nodes(_HIGH)

    def panel(p, q):
        g_hi = _gl_panel(f, p, q, hi)
        return g_hi, abs(g_hi - _gl_panel(f, p, q, lo))

    value, err = panel(a, b)
    heap = [(-err, a, b, value)]
    total_err = err
    while total_err > tol:
        if len(heap) >= PANEL_BUDGET:
            raise QuadratureError(f"panel budget of {PANEL_BUDGET} exceeded on [{a}, {b}]")
        neg_err, p, q, _ = heapq.heappop(heap)
        m = 0.5 * (p + q)
        if not p < m < q:
            raise QuadratureError(f"panel [{p}, {q}] cannot be split further")
        v1, e1 = panel(p, m)
        v2, e2 = panel(m, q)
        heapq.heappush(heap, (-e1, p, m, v1))
        heapq.heappush(heap, (-e2, m, q, v2))
        total_err += neg_err + e1 + e2
    pieces = sorted(heap, key=lambda item: item[1])
    acc = NeumaierSum()
    err = 0.0
    for neg_err, _, _, v in pieces:
        acc.add(v)
        err -= neg_err
    return acc.value, err + acc.error_bound(), len(pieces)


def _tanh_sinh(f: _Counter, a: float, b: float, tol: float, max_level: int = 12):
    """Trapezoidal rule in u after x = mid + half * tanh(pi/2 sinh u).

    Nodes that round onto an endpoint are skipped, so the integrand is
    never sampled at a or b. Near a nonzero endpoint the nodes cannot come
    closer than one ulp of it; the mass left out there is negligible for
    log singularities but about 2*sqrt(ulp) for 1/sqrt-type ones.
    """
    half = 0.5 * (b - a)
    umax = 4.0

    def contribution(u: float) -> float:
        v = 0.5 * math.pi * math.sinh(u)
        ch = math.cosh(v)
        w = half * 0.5 * math.pi * math.cosh(u) / (ch * ch)
        if w == 0.0:
            return 0.0
        # distance to the nearer endpoint, computed without cancellation
        e = math.exp(-2.0 * abs(v))
        dist = half * 2.0 * e / (1.0 + e)
        x = b - dist if v > 0 else a + dist
        if x <= a or x >= b:
            return 0.0
        return w * f(x)

    h = 1.0
    acc = NeumaierSum()
    acc.add(contribution(0.0))
    k = 1
    while k * h <= umax:
        acc.add(contribution(k * h))
        acc.add(contribution(-k * h))
        k += 1
    estimate = h * acc.value
    diff = math.inf
    for level in range(1, max_level + 1):
        h *= 0.5
        k = 1
        while k * h <= umax:
            acc.add(contribution(k * h))
            acc.add(contribution(-k * h))
            k += 2
        new = h * acc.value
        diff = abs(new - estimate)
        estimate = new
        if diff <= tol and level >= 3:
            return estimate, diff
    raise QuadratureError(f"tanh-sinh did not reach {tol:g} on [{a}, {b}] (last change {diff:.3g})")


_SIDES = {"a": "left", "left": "left", "b": "right", "right": "right"}


def _normalize_sides(flags: Union[str, Iterable[str], None]) -> frozenset:
    if not flags:
        return frozenset()
    if isinstance(flags, str):
        flags = [flags]
    out = set()
    for fl in flags:
        if fl not in _SIDES:
            raise UsageError(f"unknown endpoint flag {fl!r}; use 'left' or 'right'")
        out.add(_SIDES[fl])
    return frozenset(out)


def integrate_1d(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12,
                 singular_endpoints: Union[str, Iterable[str], None] = ()) -> QuadResult:
    """Integral of ``f`` over [a, b].

    Smooth parts use adaptive bisection with GL15/GL31 panel pairs; sides
    listed in ``singular_endpoints`` ("left"/"right") get the tanh-sinh
    substitution on the adjacent half (the whole interval when both are
    flagged). ``abs_error`` is the sum of the refinement estimates.
    """
    if not a < b:
        raise UsageError(f"integrate_1d needs a < b, got [{a}, {b}]")
    if not tol > 0:
        raise UsageError("tol must be positive")
    sides = _normalize_sides(singular_endpoints)
    g = _Counter(f)
    if not sides:
        value, err, panels = _adaptive(g, a, b, tol)
    elif len(sides) == 2:
        value, err = _tanh_sinh(g, a, b, tol)
        panels = 1
    else:
        m = 0.5 * (a + b)
        if "right" in sides:
            v1, e1, panels = _adaptive(g, a, m, 0.5 * tol)
            v2, e2 = _tanh_sinh(g, m, b, 0.5 * tol)
        else:
            v2, e2 = _tanh_sinh(g, a, m, 0.5 * tol)
            v1, e1, panels = _adaptive(g, m, b, 0.5 * tol)
        value, err = v1 + v2, e1 + e2 + math.ulp(v1 + v2)
        panels += 1
    return QuadResult(PreciseValue(value, err), panels, g.evals)


def _tensor(f, rule: QuadRule, counter: list) -> float:
    xs = [0.5 * (1.0 + x) for x in rule.nodes]
    ws = [0.5 * w for w in rule.weights]
    acc = NeumaierSum()
    for x, wx in zip(xs, ws):
        row = NeumaierSum()
        for y, wy in zip(xs, ws):
            v = f(x, y)
            if not math.isfinite(v):
                raise QuadratureError(f"integrand not finite at (x, y)=({x!r}, {y!r})")
            row.add(wy * v)
        acc.add(wx * row.value)
    counter[0] += len(xs) * len(xs)
    return acc.value


def integrate_unit_square(f: Callable[[float, float], float], tol: float = 1e-12) -> QuadResult:
    """Tensor Gauss-Legendre on [0,1]^2 with orders 16, 32, 64.

    Stops when two successive orders agree within ``tol``; ``abs_error`` is
    that last difference.
    """
    if not tol > 0:
        raise UsageError("tol must be positive")
    counter = [0]
    previous = None
    diff = math.inf
    for order in _SQUARE_ORDERS:
        estimate = _tensor(f, gl_nodes(order), counter)
        if previous is not None:
            diff = abs(estimate - previous)
            if diff <= tol:
                return QuadResult(PreciseValue(estimate, diff), 1, counter[0])
        previous = estimate
    raise QuadratureError(
        f"unit-square rule did not converge to {tol:g} by order {_SQUARE_ORDERS[-1]} "
        f"(last change {diff:.3g})")
