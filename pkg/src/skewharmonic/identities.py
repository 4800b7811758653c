"""Identity registry and verification engine.

Every identity has a left-hand side with one or more numerical routes and a
right-hand side that is either an exact :class:`ClosedForm` or a
parametric expression in polylogarithms. Checking an identity means
computing both sides and comparing the residual with the identity's tolerance.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple, Optional, Sequence, Union

from .accel import SeriesSpec, sum_cvz, sum_direct, sum_power_series
from .errors import SkewHarmonicError, UsageError
from .harmonic import HarmonicCursor, harmonic_terms, inner_sum, inner_sums, sequential
from .polylog import li2, li2_float, li3, log_square_integral
from .quad import integrate_1d, integrate_unit_square
from .realcore import (CATALAN, LN2, PI, ZETA3, ClosedForm, PreciseValue,
                       constant, eval_closed_form, pv_log1p)

__all__ = ["Route", "RouteValue", "RoutePlan", "Identity", "VerificationResult",
           "registry", "get_identity", "evaluate", "verify_all", "resolution",
           "TOPICS"]

CVZ_TERMS = 48
QUAD_TOL = 1e-13
SQUARE_TOL = 1e-12
SERIES_TARGET = 1e-15


class Route(str, enum.Enum):
    SERIES_DIRECT = "SERIES_DIRECT"
    SERIES_CVZ = "SERIES_CVZ"
    QUAD_1D = "QUAD_1D"
    QUAD_2D = "QUAD_2D"
    POLYLOG_EXPR = "POLYLOG_EXPR"

    def __str__(self) -> str:
        return self.value


class RouteValue(NamedTuple):
    value: PreciseValue
    evals: int


@dataclass(frozen=True)
class RoutePlan:
    route: Route
    compute: Callable[[Optional[float]], RouteValue]
    where: Optional[Callable[[float], bool]] = None
    tolerance: Optional[float] = None
    note: str = ""

    def applies(self, param: Optional[float]) -> bool:
        return self.where is None or param is None or self.where(param)


@dataclass(frozen=True)
class Identity:
    id: str
    description: str
    paper_anchor: str
    topic: str
    lhs_routes: tuple[RoutePlan, ...]
    rhs: Union[ClosedForm, Callable[[float], PreciseValue]]
    rhs_text: str
    tolerance: float
    param_grid: tuple[float, ...] = ()
    param_name: str = ""

    @property
    def routes(self) -> tuple[Route, ...]:
        return tuple(p.route for p in self.lhs_routes)

    @property
    def parametric(self) -> bool:
        return bool(self.param_grid)

    def plan(self, route: Union[Route, str]) -> RoutePlan:
        r = _route(route)
        for p in self.lhs_routes:
            if p.route is r:
                return p
        raise UsageError(f"route {r} is not registered for {self.id}; "
                         f"available: {', '.join(map(str, self.routes))}")

    def tolerance_for(self, route: Union[Route, str]) -> float:
        p = self.plan(route)
        return self.tolerance if p.tolerance is None else p.tolerance

    def rhs_value(self, param: Optional[float] = None) -> PreciseValue:
        if isinstance(self.rhs, ClosedForm):
            return eval_closed_form(self.rhs)
        return self.rhs(param)


@dataclass(frozen=True)
class VerificationResult:
    id: str
    route: Route
    param: Optional[float]
    lhs: Optional[PreciseValue]
    rhs: Optional[PreciseValue]
    residual: float
    tolerance: float
    passed: bool
    evals: int
    seconds: float
    paper_anchor: str = ""
    error: Optional[str] = None


def _route(route: Union[Route, str]) -> Route:
    if isinstance(route, Route):
        return route
    try:
        return Route(str(route).upper())
    except ValueError:
        raise UsageError(f"unknown route {route!r}; expected one of "
                         f"{', '.join(r.value for r in Route)}") from None


# ---------------------------------------------------------------------------
# shared numerical pieces



@lru_cache(maxsize=4)
def _inner_table(n_max: int) -> tuple[float, ...]:
    return tuple(inner_sums(n_max))


def _cvz(term: Callable[[int], float], start: int = 1, name: str = "") -> RouteValue:
    r = sum_cvz(SeriesSpec(term, start=start, name=name), CVZ_TERMS)
    return RouteValue(r.value, r.terms_used)


def _harmonic_term(fn: Callable[[HarmonicCursor], float]) -> Callable[[int], float]:
    return sequential(fn)


def _power(fn: Callable[[HarmonicCursor], float], t: float, name: str) -> RouteValue:
    r = sum_power_series(sequential(fn), t, SERIES_TARGET, name=name)
    return RouteValue(r.value, r.terms_used)


def _integral_from_zero(f: Callable[[float], float], t: float, **kw) -> RouteValue:
    """int_0^t f, for either sign of t."""
    if t == 0.0:
        return RouteValue(PreciseValue(0.0), 0)
    if t > 0.0:
        q = integrate_1d(f, 0.0, t, QUAD_TOL, **kw)
        return RouteValue(q.value, q.evals)
    q = integrate_1d(f, t, 0.0, QUAD_TOL, **kw)
    return RouteValue(-q.value, q.evals)


def _log_sq(s: float) -> float:
    lu = math.log1p(-s)
    return lu * lu / s


def _phi_quad(t: float) -> RouteValue:
    """int_0^t ln^2(1-s)/s ds by quadrature."""
    return _integral_from_zero(_log_sq, t)


def _inner_log_integral(x: float) -> RouteValue:
    """int_0^1 ln(1+xy)/(1+y) dy."""
    sing = "right" if x == -1.0 else ()
    q = integrate_1d(lambda y: math.log1p(x * y) / (1.0 + y), 0.0, 1.0, QUAD_TOL,
                     singular_endpoints=sing)
    return RouteValue(q.value, q.evals)


def _square(f) -> RouteValue:
    q = integrate_unit_square(f, SQUARE_TOL)
    return RouteValue(q.value, q.evals)


def _j1_quad(_=None) -> RouteValue:
    q = integrate_1d(lambda x: li2_float(0.5 * (1.0 - x)) / (1.0 + x), 0.0, 1.0, QUAD_TOL)
    return RouteValue(q.value, q.evals)


def _j2_quad(_=None) -> RouteValue:
    q = integrate_1d(lambda x: li2_float(-x) / (1.0 + x), 0.0, 1.0, QUAD_TOL)
    return RouteValue(-q.value, q.evals)


def _ln1m(t: float) -> PreciseValue:
    return pv_log1p(-t)


def _cf(expr: ClosedForm) -> PreciseValue:
    return eval_closed_form(expr)


# ---------------------------------------------------------------------------
# route implementations


def _sigma1_series(_=None) -> RouteValue:
    inner = _inner_table(CVZ_TERMS + 1)
    return _cvz(lambda k: inner[k] ** 2, start=0, name="sigma1")


def _sigma2_series(_=None) -> RouteValue:
    inner = _inner_table(2 * CVZ_TERMS + 2)
    r = _cvz(lambda k: inner[2 * k] ** 2, start=1, name="sigma2")
    return RouteValue(-r.value, r.evals)


def _sigma_series(_=None) -> RouteValue:
    inner = _inner_table(CVZ_TERMS + 1)
    return _cvz(lambda k: inner[k] ** 2 / k, start=1, name="sigma")


def _sigma1_square(_=None) -> RouteValue:
    return _square(lambda x, y: 1.0 / ((1.0 + x * y) * (1.0 + x) * (1.0 + y)))


def _sigma2_square(_=None) -> RouteValue:
    def f(x, y):
        p = x * x * y * y
        return p / ((1.0 + p) * (1.0 + x) * (1.0 + y))
    r = _square(f)
    return RouteValue(-r.value, r.evals)


def _sigma_square(_=None) -> RouteValue:
    return _square(lambda x, y: math.log1p(x * y) / ((1.0 + x) * (1.0 + y)))


def _sigma_decomp(_=None) -> RouteValue:
    j1, j2 = _j1_quad(), _j2_quad()
    tail = _cf((LN2 ** 2 / 2 - PI ** 2 / 12) * LN2)
    return RouteValue(j1.value + j2.value + tail, j1.evals + j2.evals)


def _eq1_series(x: float) -> PreciseValue:
    ln2 = constant("LN2")
    r = _power(lambda c: c.h_minus / c.n, x, "sum H_n^- x^n / n")
    return ln2 * _ln1m(x) + r.value


def _eq2_closed(x: float) -> PreciseValue:
    return li2(0.5 * (1.0 - x)) - li2(-x) + _cf(LN2 ** 2 / 2 - PI ** 2 / 12)


def _int_half_polylog(_=None) -> RouteValue:
    ln2, z3 = constant("LN2"), constant("ZETA3")
    v = -(ln2 ** 3) - 2 * ln2 * li2(0.5) - 2 * li3(0.5) + 2 * z3
    return RouteValue(v, 2)


def _j1_polylog(_=None) -> RouteValue:
    # J1 = ln2 Li2(1/2) - int_0^{1/2} ln^2(1-t)/t dt
    ln2 = constant("LN2")
    half = _int_half_polylog()
    return RouteValue(ln2 * li2(0.5) - half.value, 3)


def _j2_series(_=None) -> RouteValue:
    return _cvz(_harmonic_term(lambda c: c.h2 / (c.n + 1)), name="sum (-1)^(n+1) H2_n/(n+1)")


def _gf_cvz(fn, name) -> RouteValue:
    r = _cvz(_harmonic_term(fn), name=name)
    # sum c_n (-1)^n = -sum (-1)^(n-1) c_n
    return RouteValue(-r.value, r.evals)


def _eq5_quad(t: float) -> RouteValue:
    return _integral_from_zero(lambda s: li2_float(s) / (s * (1.0 - s)), t)


def _eq6_quad(t: float) -> RouteValue:
    def f(s):
        lu = math.log1p(-s)
        return (lu * lu + 2.0 * li2_float(s)) / s
    return _integral_from_zero(f, t)


def _eq5_rhs(t: float) -> PreciseValue:
    return li3(t) - _ln1m(t) * li2(t) - _phi_quad(t).value


def _eq6_rhs(t: float) -> PreciseValue:
    return _phi_quad(t).value + 2 * li3(t)


def _lemma_rhs(t: float) -> PreciseValue:
    return 3 * li3(t) - li2(t) * _ln1m(t)


def _lemma_quad(t: float) -> RouteValue:
    def f(s):
        lu = math.log1p(-s)
        l2 = li2_float(s)
        return l2 / (s * (1.0 - s)) + (lu * lu + 2.0 * l2) / s
    return _integral_from_zero(f, t)


def _lemma_polylog(t: float) -> RouteValue:
    # closed form of sum H2_n t^n/n using the log-square integral by quadrature, plus
    # that of 2 sum H_n t^n/n^2 using its antiderivative; the two integrals must cancel
    phi_q = _phi_quad(t)
    a = li3(t) - _ln1m(t) * li2(t) - phi_q.value
    b = log_square_integral(t) + 2 * li3(t)
    return RouteValue(a + b, phi_q.evals + 6)


def _lemma_cvz(_t: float) -> RouteValue:
    a = _gf_cvz(lambda c: c.h2 / c.n, "sum H2_n (-1)^n / n")
    b = _gf_cvz(lambda c: c.h / (c.n * c.n), "sum H_n (-1)^n / n^2")
    return RouteValue(a.value + 2 * b.value, a.evals + b.evals)


def _rem2_series(_=None) -> RouteValue:
    # sum (-1)^(n-1) H_n^-/n = ln^2 2 + sum_j (-1)^(j-1) H_j/j, obtained from
    # H_n^- = ln2 - (-1)^n I_n and swapping the sums in sum_n I_n/n
    r = _cvz(_harmonic_term(lambda c: c.h / c.n), name="sum (-1)^(j-1) H_j/j")
    ln2 = constant("LN2")
    return RouteValue(ln2 * ln2 + r.value, r.evals)


def _inner_cvz(n: float) -> RouteValue:
    m = int(n)
    return _cvz(lambda k: 1.0 / (m + k), name=f"I_{m}")


INNER_DIRECT_TARGET = 1e-5


def _inner_direct(n: float) -> RouteValue:
    m = int(n)
    r = sum_direct(SeriesSpec(lambda k: 1.0 / (m + k), name=f"I_{m}"), INNER_DIRECT_TARGET)
    return RouteValue(r.value, r.terms_used)


RAO_DIRECT_TARGET = 1e-7
EULER_DIRECT_TARGET = 1e-6


def _direct(fn: Callable[[int, float, float, float], float], target: float,
            name: str) -> RouteValue:
    """Direct alternating sum of fn(n, H_n, H_n^-, H_n^(2)) from n = 1."""
    seq = sequential(lambda c: fn(c.n, c.h, c.h_minus, c.h2))
    spec = SeriesSpec(seq, name=name, stream=lambda: harmonic_terms(fn))
    r = sum_direct(spec, target)
    return RouteValue(r.value, r.terms_used)


def _rao_direct(_=None) -> RouteValue:
    return _direct(lambda n, h, hm, h2: h / (n * n), RAO_DIRECT_TARGET, "Rao sum")


def _const(v: Callable[[], PreciseValue], evals: int = 1):
    return lambda _=None: RouteValue(v(), evals)


def _is_minus_one(t: float) -> bool:
    return t == -1.0


def _open_disk(t: float) -> bool:
    return abs(t) < 1.0


# ---------------------------------------------------------------------------
# registry

_SQUARE = "Alternating square series"
_INNER = "Inner integral and its dilogarithm form"
_LOGSQ = "Log-square integral and the J integrals"
_SPECIAL = "Polylogarithm special values"
_EULER = "Generating functions and Euler sums"

TOPICS = (_SQUARE, _INNER, _LOGSQ, _SPECIAL, _EULER)

SIGMA_CF = PI ** 2 * LN2 / 12 + LN2 ** 3 / 3 - ZETA3 / 2
SIGMA1_CF = PI ** 2 / 24
SIGMA2_CF = CATALAN / 2 + PI ** 2 / 48 - ClosedForm.rational(7) / 8 * LN2 ** 2 - PI * LN2 / 8
J1_CF = PI ** 2 * LN2 / 12 - LN2 ** 3 / 6 - ZETA3 / 4
J2_CF = PI ** 2 * LN2 / 12 - ZETA3 / 4
INT_HALF_CF = ZETA3 / 4 - LN2 ** 3 / 3

_GF_GRID = (-0.9, -0.75, -0.5, -0.25, 0.25, 0.5, 0.75)


def _P(route, compute, **kw) -> RoutePlan:
    return RoutePlan(route, compute, **kw)


S, C, Q1, Q2, PE = (Route.SERIES_DIRECT, Route.SERIES_CVZ, Route.QUAD_1D,
                    Route.QUAD_2D, Route.POLYLOG_EXPR)


@lru_cache(maxsize=1)
def _build() -> tuple[Identity, ...]:
    return (
        Identity(
            "SIGMA1", "sum_{n>=0} (-1)^n I_n^2 = pi^2/24, also the double integral "
            "of 1/((1+xy)(1+x)(1+y)) over the unit square",
            "Introduction: sigma_1 = pi^2/24", _SQUARE,
            (_P(C, _sigma1_series), _P(Q2, _sigma1_square)),
            SIGMA1_CF, str(SIGMA1_CF), 1e-9),
        Identity(
            "SIGMA2", "sum_{n>=1} (-1)^n I_{2n}^2 = G/2 + pi^2/48 - 7/8 ln^2 2 - pi/8 ln 2; "
            "minus the double integral of x^2y^2/((1+x^2y^2)(1+x)(1+y))",
            "Introduction: sigma_2 = G/2 + pi^2/48 - 7/8 ln^2 2 - pi/8 ln 2", _SQUARE,
            (_P(C, _sigma2_series), _P(Q2, _sigma2_square)),
            SIGMA2_CF, str(SIGMA2_CF), 1e-8),
        Identity(
            "SIGMA", "sum_{n>=1} (-1)^(n-1) I_n^2 / n = pi^2/12 ln 2 + ln^3 2 / 3 - zeta(3)/2; "
            "also the double integral of ln(1+xy)/((1+x)(1+y))",
            "Proposition: sigma = pi^2/12 ln2 + (ln2)^3/3 - zeta(3)/2 ~ 0.08007", _SQUARE,
            (_P(C, _sigma_series), _P(Q2, _sigma_square)),
            SIGMA_CF, str(SIGMA_CF), 1e-9),
        Identity(
            "SIGMA_DECOMP", "sigma = J1 + J2 + (ln^2 2 / 2 - pi^2/12) ln 2 with J1, J2 by quadrature",
            "Evaluation: sigma = J1 + J2 + (ln^2 2/2 - pi^2/12) ln 2", _SQUARE,
            (_P(PE, _sigma_decomp),),
            SIGMA_CF, str(SIGMA_CF), 1e-9),
        Identity(
            "EQ1", "int_0^1 ln(1+xy)/(1+y) dy = ln 2 ln(1-x) + sum_{n>=1} x^n H_n^- / n",
            "Evaluation: inner integral as ln2 ln(1-x) + sum x^n H_n^-/n", _INNER,
            (_P(Q1, _inner_log_integral),),
            _eq1_series, "ln2*ln(1-x) + sum_{n>=1} x^n H_n^-/n", 1e-9,
            (-0.75, -0.5, -0.25, 0.25, 0.5, 0.75), "x"),
        Identity(
            "EQ2", "int_0^1 ln(1+xy)/(1+y) dy = Li2((1-x)/2) - Li2(-x) + ln^2 2 / 2 - pi^2/12",
            "Remark: dilogarithm closed form of the inner integral, |x| <= 1", _INNER,
            (_P(Q1, _inner_log_integral),),
            _eq2_closed, "Li2((1-x)/2) - Li2(-x) + 1/2*LN2^2 - 1/12*PI^2", 1e-9,
            (-1.0, -0.5, 0.0, 0.5, 0.9, 1.0), "x"),
        Identity(
            "EQ3", "int_0^t ln^2(1-s)/s ds = ln t ln^2(1-t) + 2 ln(1-t) Li2(1-t) - 2 Li3(1-t) + 2 zeta(3)",
            "Evaluation: antiderivative of ln^2(1-t)/t", _LOGSQ,
            (_P(Q1, _phi_quad),),
            log_square_integral, "ln(t)*ln(1-t)^2 + 2*ln(1-t)*Li2(1-t) - 2*Li3(1-t) + 2*ZETA3",
            1e-9, (0.1, 0.25, 0.5, 0.75), "t"),
        Identity(
            "INT_HALF", "int_0^{1/2} ln^2(1-t)/t dt = -ln^3 2 - 2 ln 2 Li2(1/2) - 2 Li3(1/2) + 2 zeta(3) "
            "= zeta(3)/4 - ln^3 2 / 3",
            "Evaluation: the antiderivative at t = 1/2", _LOGSQ,
            (_P(Q1, lambda _=None: _phi_quad(0.5)), _P(PE, _int_half_polylog)),
            INT_HALF_CF, str(INT_HALF_CF), 1e-9),
        Identity(
            "J1", "int_0^1 Li2((1-x)/2)/(1+x) dx = pi^2/12 ln 2 - ln^3 2 / 6 - zeta(3)/4",
            "Evaluation: J1 after t = (1-x)/2 and integration by parts", _LOGSQ,
            (_P(Q1, _j1_quad), _P(PE, _j1_polylog)),
            J1_CF, str(J1_CF), 1e-9),
        Identity(
            "J2", "-int_0^1 Li2(-x)/(1+x) dx = sum_{n>=1} (-1)^(n+1) H2_n/(n+1) = pi^2/12 ln 2 - zeta(3)/4",
            "Evaluation: J2 through the H_n^(2) generating function", _LOGSQ,
            (_P(Q1, _j2_quad), _P(C, _j2_series)),
            J2_CF, str(J2_CF), 1e-9),
        Identity(
            "LI2_HALF", "Li2(1/2) = pi^2/12 - ln^2 2 / 2",
            "Evaluation: classical value Li2(1/2)", _SPECIAL,
            (_P(PE, _const(lambda: li2(0.5))),),
            PI ** 2 / 12 - LN2 ** 2 / 2, str(PI ** 2 / 12 - LN2 ** 2 / 2), 1e-11),
        Identity(
            "LI3_HALF", "Li3(1/2) = 7/8 zeta(3) - pi^2 ln 2 / 12 + ln^3 2 / 6",
            "Evaluation: classical value Li3(1/2)", _SPECIAL,
            (_P(PE, _const(lambda: li3(0.5))),),
            ZETA3 * 7 / 8 - PI ** 2 * LN2 / 12 + LN2 ** 3 / 6,
            str(ZETA3 * 7 / 8 - PI ** 2 * LN2 / 12 + LN2 ** 3 / 6), 1e-11),
        Identity(
            "GF_H2", "sum_{n>=1} H2_n t^n = Li2(t)/(1-t)",
            "Evaluation: Cauchy product of Li2(t) and 1/(1-t)", _EULER,
            (_P(S, lambda t: _power(lambda c: c.h2, t, "sum H2_n t^n")),),
            lambda t: li2(t) / (1.0 - t), "Li2(t)/(1-t)", 1e-11, _GF_GRID, "t"),
        Identity(
            "GF_H", "sum_{n>=1} H_n t^n = -ln(1-t)/(1-t)",
            "Lemma proof: generating function of H_n", _EULER,
            (_P(S, lambda t: _power(lambda c: c.h, t, "sum H_n t^n")),),
            lambda t: -_ln1m(t) / (1.0 - t), "-ln(1-t)/(1-t)", 1e-11, _GF_GRID, "t"),
        Identity(
            "GF_H_N", "sum_{n>=1} H_n t^n / n = ln^2(1-t)/2 + Li2(t)",
            "Lemma proof: sum H_n t^n/n = ln^2(1-t)/2 + Li2(t)", _EULER,
            (_P(S, lambda t: _power(lambda c: c.h / c.n, t, "sum H_n t^n/n"), where=_open_disk),
             _P(C, lambda t: _gf_cvz(lambda c: c.h / c.n, "sum H_n (-1)^n/n"), where=_is_minus_one)),
            lambda t: _ln1m(t) ** 2 / 2 + li2(t), "ln(1-t)^2/2 + Li2(t)", 1e-11,
            _GF_GRID + (-1.0,), "t"),
        Identity(
            "EQ5", "sum_{n>=1} H2_n t^n / n = Li3(t) - ln(1-t) Li2(t) - int_0^t ln^2(1-s)/s ds",
            "Lemma proof: H_n^(2) series divided by n", _EULER,
            (_P(S, lambda t: _power(lambda c: c.h2 / c.n, t, "sum H2_n t^n/n")),
             _P(Q1, _eq5_quad)),
            _eq5_rhs, "Li3(t) - ln(1-t)*Li2(t) - int_0^t ln(1-s)^2/s ds", 1e-9,
            (-0.75, -0.5, 0.5, 0.75), "t"),
        Identity(
            "EQ6", "2 sum_{n>=1} H_n t^n / n^2 = int_0^t ln^2(1-s)/s ds + 2 Li3(t)",
            "Lemma proof: H_n series divided by n^2", _EULER,
            (_P(S, _eq6_series), _P(Q1, _eq6_quad)),
            _eq6_rhs, "int_0^t ln(1-s)^2/s ds + 2*Li3(t)", 1e-9,
            (-0.75, -0.5, 0.5, 0.75), "t"),
        Identity(
            "LEMMA4", "sum H2_n t^n / n + 2 sum H_n t^n / n^2 = 3 Li3(t) - Li2(t) ln(1-t), |t| <= 1, t != 1",
            "Lemma: 3 Li3(t) - Li2(t) ln(1-t)", _EULER,
            (_P(S, lambda t: _power(lambda c: c.h2 / c.n + 2.0 * c.h / (c.n * c.n), t,
                                    "Lemma series"), where=_open_disk),
             _P(C, _lemma_cvz, where=_is_minus_one),
             _P(Q1, _lemma_quad),
             _P(PE, _lemma_polylog)),
            _lemma_rhs, "3*Li3(t) - Li2(t)*ln(1-t)", 1e-10,
            (-1.0, -0.75, -0.5, -0.25, 0.25, 0.5, 0.75), "t"),
        Identity(
            "RAO", "sum_{n>=1} (-1)^(n-1) H_n / n^2 = 5/8 zeta(3)",
            "Additional results: alternating Euler sum 5/8 zeta(3)", _EULER,
            (_P(C, lambda _=None: _cvz(_harmonic_term(lambda c: c.h / (c.n * c.n)), name="Rao")),
             _P(S, _rao_direct, tolerance=10 * RAO_DIRECT_TARGET,
                note="coarse direct cross-check")),
            ZETA3 * 5 / 8, str(ZETA3 * 5 / 8), 1e-11),
        Identity(
            "ALT_H2_N", "sum_{n>=1} (-1)^(n-1) H2_n / n = zeta(3) - pi^2/12 ln 2",
            "Additional results: lemma at t = -1 combined with the 5/8 zeta(3) sum", _EULER,
            (_P(C, lambda _=None: _cvz(_harmonic_term(lambda c: c.h2 / c.n), name="alt H2/n")),
             _P(S, lambda _=None: _direct(lambda n, h, hm, h2: h2 / n, EULER_DIRECT_TARGET, "alt H2/n"),
                tolerance=EULER_DIRECT_TARGET, note="coarse direct cross-check")),
            ZETA3 - PI ** 2 * LN2 / 12, str(ZETA3 - PI ** 2 * LN2 / 12), 1e-11),
        Identity(
            "J2_SERIES", "sum_{n>=1} (-1)^(n+1) H2_n / (n+1) = pi^2/12 ln 2 - zeta(3)/4",
            "Additional results: sum (-1)^(n+1) H_n^(2)/(n+1) = J2", _EULER,
            (_P(C, _j2_series),
             _P(S, lambda _=None: _direct(lambda n, h, hm, h2: h2 / (n + 1), EULER_DIRECT_TARGET,
                                          "sum (-1)^(n+1) H2_n/(n+1)"),
                tolerance=EULER_DIRECT_TARGET, note="coarse direct cross-check")),
            J2_CF, str(J2_CF), 1e-11),
        Identity(
            "REM2_INT", "int_0^1 ln(1-x)/(1+x) dx = ln^2 2 / 2 - pi^2/12",
            "Remark: inner integral at x = -1", _INNER,
            (_P(Q1, lambda _=None: _inner_log_integral(-1.0)),),
            LN2 ** 2 / 2 - PI ** 2 / 12, str(LN2 ** 2 / 2 - PI ** 2 / 12), 1e-9),
        Identity(
            "REM2_SER", "sum_{n>=1} (-1)^(n-1) H_n^- / n = ln^2 2 / 2 + pi^2/12",
            "Remark: series at x = -1", _INNER,
            (_P(C, _rem2_series, note="summed as ln^2 2 + sum (-1)^(j-1) H_j/j"),),
            LN2 ** 2 / 2 + PI ** 2 / 12, str(LN2 ** 2 / 2 + PI ** 2 / 12), 1e-11),
        Identity(
            "INNER_REP", "I_n = sum_{k>=1} (-1)^(k-1)/(n+k) = (-1)^n (ln 2 - H_n^-)",
            "Evaluation: 1/(n+k) = int_0^1 x^(n+k-1) dx", _SQUARE,
            (_P(C, _inner_cvz),
             _P(S, _inner_direct, tolerance=10 * INNER_DIRECT_TARGET,
                note="truncated with alternating tail bound")),
            lambda n: inner_sum(int(n)), "(-1)^n*(LN2 - H_n^-)", 1e-11,
            (0.0, 1.0, 2.0, 5.0, 10.0, 100.0), "n"),
    )


def _eq6_series(t: float) -> RouteValue:
    r = _power(lambda c: c.h / (c.n * c.n), t, "sum H_n t^n/n^2")
    return RouteValue(2 * r.value, r.evals)


def registry() -> list[Identity]:
    """All registered identities, in registry order."""
    return list(_build())


def get_identity(identity_id: str) -> Identity:
    for ident in _build():
        if ident.id == identity_id:
            return ident
    raise UsageError(f"unknown identity {identity_id!r}")


def evaluate(identity_id: str, route: Union[Route, str], param: Optional[float] = None,
             tol_override: Optional[float] = None) -> VerificationResult:
    """Check one identity on one route (and one parameter for parametric entries).

    Unknown ids, unregistered routes and missing/unexpected parameters raise
    :class:`UsageError`. Numerical failures are reported in the result with
    ``passed=False``.
    """
    ident = get_identity(identity_id)
    plan = ident.plan(route)
    if ident.parametric:
        if param is None:
            raise UsageError(f"{ident.id} is parametric in {ident.param_name}; a parameter is required")
        param = float(param)
        if not plan.applies(param):
            raise UsageError(f"route {plan.route} of {ident.id} does not apply at "
                             f"{ident.param_name}={param:g}")
    elif param is not None:
        raise UsageError(f"{ident.id} takes no parameter")
    tol = tol_override if tol_override is not None else ident.tolerance_for(plan.route)
    start = time.perf_counter()
    lhs = rhs = None
    evals = 0
    error = None
    try:
        lhs, evals = plan.compute(param)
        rhs = ident.rhs_value(param)
    except (SkewHarmonicError, ArithmeticError, ValueError) as exc:
        error = f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    if error is None:
        residual = abs(lhs.value - rhs.value)
        passed = residual <= tol and tol >= resolution(lhs.value, rhs.value)
    else:
        residual = math.inf
        passed = False
    return VerificationResult(ident.id, plan.route, param, lhs, rhs, residual, tol,
                              passed, evals, seconds, ident.paper_anchor, error)


def resolution(a: float, b: float) -> float:
    """Spacing of binary64 numbers at the larger of |a|, |b|.

    Equal floats only agree to this resolution, so a tolerance below it
    cannot certify a match; such checks fail even when the residual is 0.
    """
    return math.ulp(max(abs(a), abs(b)))


def _param_key(p: Optional[float]) -> tuple:
    return (0, 0.0) if p is None else (1, p)


def verify_all(tol_override: Optional[float] = None,
               ids: Optional[Sequence[str]] = None) -> list[VerificationResult]:
    """Every identity, every route, every applicable grid point.

    Results are ordered by (id, route, param); failures never abort the sweep.
    """
    selected = registry() if ids is None else [get_identity(i) for i in ids]
    jobs = []
    for ident in selected:
        for plan in ident.lhs_routes:
            params = [p for p in ident.param_grid if plan.applies(p)] if ident.parametric else [None]
            for p in params:
                jobs.append((ident.id, plan.route.value, _param_key(p), p))
    jobs.sort(key=lambda j: (j[0], j[1], j[2]))
    return [evaluate(i, r, p, tol_override) for i, r, _, p in jobs]
