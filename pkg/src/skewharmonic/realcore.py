"""Error-tracked binary64 values, compensated summation, exact closed forms
over {pi, ln 2, zeta(3), G}, and the constant table.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import UsageError

EPS = 2.0 ** -52

__all__ = [
    "EPS", "PreciseValue", "NeumaierSum", "compensated_sum", "pv_log", "pv_log1p",
    "SYMBOLS", "ClosedForm", "PI", "LN2", "ZETA3", "CATALAN", "ONE",
    "REFERENCE_DIGITS", "ConstantTable", "CONSTANTS", "constant", "constant_split",
    "eval_closed_form",
]


def _allowance(x: float) -> float:
    # one ulp of the rounded result
    return math.ulp(x)


@dataclass(frozen=True)
class PreciseValue:
    """A binary64 value together with an estimated absolute error bound.

    Arithmetic propagates bounds to first order and adds one ulp of the
    result for rounding. Plain ``int``/``float``/``Fraction`` operands are
    treated as exact (fractions are rounded and their rounding is charged).
    """

    value: float
    abs_error: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"PreciseValue must be finite, got {self.value!r}")
        if not (math.isfinite(self.abs_error) and self.abs_error >= 0.0):
            raise ValueError(f"abs_error must be finite and >= 0, got {self.abs_error!r}")

    @staticmethod
    def lift(x: Union["PreciseValue", float, int, Fraction]) -> "PreciseValue":
        if isinstance(x, PreciseValue):
            return x
        if isinstance(x, Fraction):
            v = float(x)
            err = float(abs(x - Fraction(v)))
            return PreciseValue(v, math.nextafter(err, math.inf) if err else 0.0)
        return PreciseValue(float(x), 0.0)

    def __float__(self) -> float:
        return self.value

    def __neg__(self) -> "PreciseValue":
        return PreciseValue(-self.value, self.abs_error)

    def __abs__(self) -> "PreciseValue":
        return PreciseValue(abs(self.value), self.abs_error)

    def __add__(self, other) -> "PreciseValue":
        o = PreciseValue.lift(other)
        v = self.value + o.value
        return PreciseValue(v, self.abs_error + o.abs_error + _allowance(v))

    __radd__ = __add__

    def __sub__(self, other) -> "PreciseValue":
        return self + (-PreciseValue.lift(other))

    def __rsub__(self, other) -> "PreciseValue":
        return PreciseValue.lift(other) - self

    def __mul__(self, other) -> "PreciseValue":
        o = PreciseValue.lift(other)
        v = self.value * o.value
        err = (abs(self.value) * o.abs_error + abs(o.value) * self.abs_error
               + self.abs_error * o.abs_error + _allowance(v))
        return PreciseValue(v, err)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PreciseValue":
        o = PreciseValue.lift(other)
        if abs(o.value) <= o.abs_error:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / o.value
        err = (self.abs_error + abs(v) * o.abs_error) / (abs(o.value) - o.abs_error)
        return PreciseValue(v, err + _allowance(v))

    def __rtruediv__(self, other) -> "PreciseValue":
        return PreciseValue.lift(other) / self

    def __pow__(self, k: int) -> "PreciseValue":
        if not isinstance(k, int) or k < 0:
            raise TypeError("only non-negative integer powers are supported")
        out = PreciseValue(1.0)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        return f"{self.value:.17g} ± {self.abs_error:.3g}"


def pv_log(x) -> PreciseValue:
    """Natural log of a positive PreciseValue."""
    x = PreciseValue.lift(x)
    if x.value - x.abs_error <= 0.0:
        raise ValueError("log argument not bounded away from zero")
    v = math.log(x.value)
    return PreciseValue(v, x.abs_error / (x.value - x.abs_error) + 2 * _allowance(v))


def pv_log1p(x) -> PreciseValue:
    """log(1 + x) with x > -1."""
    x = PreciseValue.lift(x)
    lo = 1.0 + x.value - x.abs_error
    if lo <= 0.0:
        raise ValueError("log1p argument not bounded away from -1")
    v = math.log1p(x.value)
    return PreciseValue(v, x.abs_error / lo + 2 * _allowance(v))


class NeumaierSum:
    """Running Neumaier-compensated sum.

    ``hi + lo`` carries the accumulated total to roughly twice working
    precision; ``value`` is its rounded form.
    """

    __slots__ = ("hi", "lo", "count", "abs_total")

    def __init__(self):
        self.hi = 0.0
        self.lo = 0.0
        self.count = 0
        self.abs_total = 0.0

    def add(self, x: float) -> None:
        s = self.hi
        t = s + x
        if abs(s) >= abs(x):
            self.lo += (s - t) + x
        else:
            self.lo += (x - t) + s
        self.hi = t
        self.count += 1
        self.abs_total += abs(x)

    @classmethod
    def from_state(cls, hi: float, lo: float, count: int, abs_total: float) -> "NeumaierSum":
        """Rebuild an accumulator from a loop that inlined :meth:`add`."""
        acc = cls()
        acc.hi, acc.lo, acc.count, acc.abs_total = hi, lo, count, abs_total
        return acc

    @property
    def value(self) -> float:
        return self.hi + self.lo

    def error_bound(self) -> float:
        """Rounding bound: 2 ulp of the total plus the second-order term."""
        n = self.count
        return 2.0 * math.ulp(self.value) + 4.0 * (n * EPS) ** 2 * self.abs_total

    def result(self) -> PreciseValue:
        v = self.value
        if not math.isfinite(v) or not math.isfinite(self.abs_total):
            raise OverflowError("compensated sum overflowed")
        return PreciseValue(v, self.error_bound())


def compensated_sum(terms: Iterable[float]) -> PreciseValue:
    """Neumaier-compensated total of finite terms.

    Raises ``ValueError`` on a non-finite term and ``OverflowError`` when the
    running sum leaves the binary64 range.
    """
    acc = NeumaierSum()
    for x in terms:
        x = float(x)
        if not math.isfinite(x):
            raise ValueError(f"non-finite term {x!r}")
        acc.add(x)
        if not math.isfinite(acc.hi):
            raise OverflowError("compensated sum overflowed")
    return acc.result()


# ---------------------------------------------------------------------------
# closed forms

SYMBOLS = ("PI", "LN2", "ZETA3", "CATALAN")
_ZERO_EXP = (0, 0, 0, 0)


def _exponents(exps: Mapping[str, int] | tuple) -> tuple:
    if isinstance(exps, tuple):
        if len(exps) != 4 or any((not isinstance(e, int)) or e < 0 for e in exps):
            raise UsageError(f"bad exponent tuple {exps!r}")
        return exps
    out = [0, 0, 0, 0]
    for name, p in exps.items():
        key = name.upper()
        if key not in SYMBOLS:
            raise UsageError(f"unknown constant symbol {name!r}")
        if not isinstance(p, int) or p < 0:
            raise UsageError(f"exponent of {name} must be a non-negative integer")
        out[SYMBOLS.index(key)] += p
    return tuple(out)


class ClosedForm:
    """Exact rational combination of monomials in PI, LN2, ZETA3, CATALAN.

    Terms are kept merged, without zero coefficients, and sorted by
    exponent tuple (PI, LN2, ZETA3, CATALAN) in descending lexicographic
    order, so equal forms have identical ``terms``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable = ()):
        merged: dict[tuple, Fraction] = {}
        for coeff, exps in terms:
            key = _exponents(exps)
            merged[key] = merged.get(key, Fraction(0)) + Fraction(coeff)
        self._terms = tuple(
            (c, e) for e, c in sorted(merged.items(), reverse=True) if c != 0
        )

    @property
    def terms(self) -> tuple:
        return self._terms

    @classmethod
    def symbol(cls, name: str) -> "ClosedForm":
        return cls([(1, {name: 1})])

    @classmethod
    def rational(cls, q) -> "ClosedForm":
        return cls([(Fraction(q), _ZERO_EXP)])

    @staticmethod
    def _coerce(other) -> "ClosedForm":
        if isinstance(other, ClosedForm):
            return other
        if isinstance(other, (int, Fraction)):
            return ClosedForm.rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ClosedForm(self._terms + o._terms)

    __radd__ = __add__

    def __neg__(self):
        return ClosedForm((-c, e) for c, e in self._terms)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ClosedForm(
            (c1 * c2, tuple(a + b for a, b in zip(e1, e2)))
            for c1, e1 in self._terms for c2, e2 in o._terms
        )

    __rmul__ = __mul__

    def __truediv__(self, q):
        if not isinstance(q, (int, Fraction)) or q == 0:
            return NotImplemented
        return self * (Fraction(1) / Fraction(q))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ClosedForm.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, ClosedForm):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        return f"ClosedForm({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (c, e) in enumerate(self._terms):
            mag = abs(c)
            coeff = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            factors = [coeff] + [
                name if p == 1 else f"{name}^{p}" for name, p in zip(SYMBOLS, e) if p
            ]
            body = "*".join(factors)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    _TERM_RE = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)((?:\*[A-Z0-9]+(?:\^\d+)?)*)\s*")

    @classmethod
    def parse(cls, text: str) -> "ClosedForm":
        """Inverse of ``str``: ``"1/12*PI^2*LN2 + 1/3*LN2^3 - 1/2*ZETA3"``."""
        text = text.strip()
        if text == "0":
            return cls()
        terms, pos = [], 0
        while pos < len(text):
            m = cls._TERM_RE.match(text, pos)
            if not m or m.end() == pos:
                raise UsageError(f"cannot parse closed form at {text[pos:]!r}")
            sign, coeff, factors = m.groups()
            if terms and sign is None:
                raise UsageError(f"missing operator before {coeff!r}")
            exps: dict[str, int] = {}
            for f in filter(None, factors.split("*")):
                name, _, p = f.partition("^")
                exps[name] = exps.get(name, 0) + (int(p) if p else 1)
            q = Fraction(coeff)
            terms.append((-q if sign == "-" else q, exps))
            pos = m.end()
        return cls(terms)


PI = ClosedForm.symbol("PI")
LN2 = ClosedForm.symbol("LN2")
ZETA3 = ClosedForm.symbol("ZETA3")
CATALAN = ClosedForm.symbol("CATALAN")
ONE = ClosedForm.rational(1)


# ---------------------------------------------------------------------------
# constants

REFERENCE_DIGITS = {
    "PI": "3.14159265358979323846264338328",
    "LN2": "0.693147180559945309417232121458",
    "ZETA3": "1.20205690315959428539973816151",
    "CATALAN": "0.915965594177219015054603514932",
}


@dataclass(frozen=True)
class ConstantTable:
    pi: PreciseValue
    ln2: PreciseValue
    zeta3: PreciseValue
    catalan: PreciseValue
    reference_digits: Mapping[str, str]

    @classmethod
    def from_digits(cls, digits: Mapping[str, str]) -> "ConstantTable":
        vals = {}
        for name in SYMBOLS:
            exact = Fraction(digits[name])
            v = float(exact)
            # conversion error is at most half an ulp; the 30-digit string is far tighter
            vals[name.lower()] = PreciseValue(v, math.ulp(v) / 2)
        return cls(reference_digits=dict(digits), **vals)

    def __getitem__(self, name: str) -> PreciseValue:
        return getattr(self, name.lower())


CONSTANTS = ConstantTable.from_digits(REFERENCE_DIGITS)


def constant(name: str) -> PreciseValue:
    """Table value of PI, LN2, ZETA3 or CATALAN (case-insensitive)."""
    key = str(name).upper()
    if key not in SYMBOLS:
        raise UsageError(f"unknown constant {name!r}; expected one of {', '.join(SYMBOLS)}")
    return CONSTANTS[key]


def constant_split(name: str) -> tuple[float, float]:
    """(hi, lo) with hi + lo equal to the reference value to ~1e-32."""
    key = str(name).upper()
    if key not in SYMBOLS:
        raise UsageError(f"unknown constant {name!r}")
    exact = Fraction(REFERENCE_DIGITS[key])
    hi = float(exact)
    return hi, float(exact - Fraction(hi))


def eval_closed_form(cf: ClosedForm) -> PreciseValue:
    """Evaluate a closed form with per-term error tracking and compensated accumulation."""
    acc = NeumaierSum()
    err = 0.0
    table = [CONSTANTS[s] for s in SYMBOLS]
    for coeff, exps in cf.terms:
        term = PreciseValue.lift(coeff)
        for base, p in zip(table, exps):
            if p:
                term = term * base ** p
        acc.add(term.value)
        err += term.abs_error
    total = acc.result()
    return PreciseValue(total.value, total.abs_error + err)
