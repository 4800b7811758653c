import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from skewharmonic.errors import UsageError
from skewharmonic.realcore import (CATALAN, CONSTANTS, LN2, PI, REFERENCE_DIGITS, ZETA3,
                                   ClosedForm, NeumaierSum, PreciseValue, compensated_sum,
                                   constant, constant_split, eval_closed_form, pv_log,
                                   pv_log1p)

EXACT = {
    "PI": oracles.machin_pi(),
    "LN2": oracles.ln2_exact(),
    "ZETA3": oracles.zeta3_exact(),
    "CATALAN": oracles.catalan_exact(),
}


@pytest.mark.parametrize("name", sorted(EXACT))
def test_constant_within_two_ulp_of_oracle(name):
    v = constant(name).value
    assert abs(Fraction(v) - EXACT[name]) <= 2 * Fraction(math.ulp(v))


@pytest.mark.parametrize("name", sorted(EXACT))
def test_reference_digits_match_oracle(name):
    assert abs(Fraction(REFERENCE_DIGITS[name]) - EXACT[name]) < Fraction(1, 10 ** 29)


@pytest.mark.parametrize("name", sorted(EXACT))
def test_constant_split_carries_extra_digits(name):
    hi, lo = constant_split(name)
    assert abs(Fraction(hi) + Fraction(lo) - EXACT[name]) < Fraction(1, 10 ** 29)


def test_constant_examples():
    assert f"{constant('PI').value:.15f}".startswith("3.14159265358979")
    assert f"{constant('LN2').value:.15f}".startswith("0.69314718055994")
    assert f"{constant('ZETA3').value:.15f}".startswith("1.20205690315959")
    assert constant("pi") == CONSTANTS.pi


def test_unknown_constant():
    with pytest.raises(UsageError):
        constant("E")
    with pytest.raises(UsageError):
        constant_split("gamma")


def test_closed_form_examples():
    assert eval_closed_form(PI ** 2 / 24).value == pytest.approx(0.4112335167120566, abs=1e-16)
    assert eval_closed_form(ClosedForm()).value == 0.0
    sigma = eval_closed_form(PI ** 2 * LN2 / 12 + LN2 ** 3 / 3 - ZETA3 / 2)
    assert round(sigma.value, 5) == 0.08007
    exact = EXACT["PI"] ** 2 * EXACT["LN2"] / 12 + EXACT["LN2"] ** 3 / 3 - EXACT["ZETA3"] / 2
    assert abs(Fraction(sigma.value) - exact) <= Fraction(sigma.abs_error)


def test_closed_form_text():
    sigma = PI ** 2 * LN2 / 12 + LN2 ** 3 / 3 - ZETA3 / 2
    assert str(sigma) == "1/12*PI^2*LN2 + 1/3*LN2^3 - 1/2*ZETA3"
    assert ClosedForm.parse(str(sigma)) == sigma
    assert str(ClosedForm()) == "0"
    assert ClosedForm.parse("0") == ClosedForm()
    assert str(-ZETA3 * 5 / 8) == "-5/8*ZETA3"
    with pytest.raises(UsageError):
        ClosedForm.parse("PI +")


def test_closed_form_merges_and_drops_zero():
    assert (LN2 - LN2).terms == ()
    assert (LN2 + LN2) == 2 * LN2
    assert len((PI * LN2 + LN2 * PI).terms) == 1


pieces = [PI ** 2 / 12, LN2 ** 3 / 3, -ZETA3 / 2, CATALAN / 2, 7 * LN2 ** 2 / 8, ClosedForm.rational(3)]


@settings(max_examples=50, deadline=None)
@given(st.permutations(pieces))
def test_canonical_form_is_order_insensitive(perm):
    a = sum(pieces, ClosedForm())
    b = sum(perm, ClosedForm())
    assert a == b and a.terms == b.terms and str(a) == str(b)
    # idempotent
    assert ClosedForm(a.terms) == a


coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=60)
monomials = st.tuples(*[st.integers(0, 3)] * 4)
forms = st.lists(st.tuples(coeffs, monomials), max_size=5).map(ClosedForm)


@settings(max_examples=100, deadline=None)
@given(forms, forms)
def test_eval_is_linear(a, b):
    lhs = eval_closed_form(a + b)
    ea, eb = eval_closed_form(a), eval_closed_form(b)
    assert abs(lhs.value - (ea.value + eb.value)) <= (lhs.abs_error + ea.abs_error + eb.abs_error
                                                      + math.ulp(ea.value + eb.value))


@settings(max_examples=100, deadline=None)
@given(forms)
def test_parse_inverts_str(a):
    assert ClosedForm.parse(str(a)) == a


def test_compensated_sum_examples():
    assert compensated_sum([1.0, -1.0]).value == 0.0
    assert compensated_sum([]).value == 0.0
    terms = [1.0] + [1e-16] * 10 ** 4
    exact = sum((Fraction(x) for x in terms), Fraction(0))
    assert compensated_sum(terms).value == float(exact)
    assert float(exact) == pytest.approx(1 + 1e-12, rel=1e-15)


def test_compensated_sum_errors():
    with pytest.raises(ValueError):
        compensated_sum([1.0, math.nan])
    with pytest.raises(OverflowError):
        compensated_sum([1.7e308, 1.7e308])


finite = st.floats(min_value=-1e12, max_value=1e12, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(st.lists(finite, max_size=60))
def test_compensated_sum_bound_and_permutation(xs):
    exact = sum((Fraction(x) for x in xs), Fraction(0))
    r = compensated_sum(xs)
    assert abs(Fraction(r.value) - exact) <= Fraction(r.abs_error)
    ys = list(xs)
    random.Random(len(xs)).shuffle(ys)
    r2 = compensated_sum(ys)
    assert abs(r.value - r2.value) <= r.abs_error + r2.abs_error


def test_neumaier_state_roundtrip():
    acc = NeumaierSum()
    for x in (0.1, 0.2, 0.3):
        acc.add(x)
    copy = NeumaierSum.from_state(acc.hi, acc.lo, acc.count, acc.abs_total)
    assert copy.result() == acc.result()


def test_precise_value_propagation():
    a = PreciseValue(1.5, 1e-10)
    b = PreciseValue(-0.25, 3e-12)
    for r in (a + b, a - b, a * b, a / b):
        assert r.abs_error >= a.abs_error * min(1.0, abs(b.value)) - 1e-300
    assert (a + b).abs_error >= a.abs_error + b.abs_error
    assert (a - b).abs_error >= a.abs_error + b.abs_error
    assert (a ** 2).value == 2.25
    assert (-a).value == -1.5 and abs(-a).value == 1.5
    assert str(PreciseValue(0.0)) == "0 ± 0"


def test_precise_value_rejects_nonfinite():
    with pytest.raises(ValueError):
        PreciseValue(math.inf)
    with pytest.raises(ValueError):
        PreciseValue(1.0, -1.0)


def test_fraction_lift_charges_rounding():
    v = PreciseValue.lift(Fraction(1, 3))
    assert abs(Fraction(v.value) - Fraction(1, 3)) <= Fraction(v.abs_error)


def test_logs():
    assert pv_log(2.0).value == math.log(2.0)
    assert pv_log1p(-0.5).value == math.log1p(-0.5)
    assert abs(pv_log(2.0).value - float(oracles.LN2)) <= pv_log(2.0).abs_error
