from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multitrig.moments import tan_moment
from multitrig.multifun import multicos_product
from multitrig.numerics import (
    LEFT_LOG,
    RIGHT_LOG,
    BudgetExhausted,
    DomainError,
    ExtReal,
    NonFiniteSample,
    integrate,
    log2,
    mp,
    pi,
    rational_to_ext,
    ulp,
)
from multitrig.poly import RationalPoly


def test_linear_integrand_is_exact():
    r = integrate(lambda t: t, 0, 1, 1e-20)
    assert r.value.value == mp.mpf(1) / 2
    assert r.err_estimate <= 1e-20


def test_log_sine_over_full_period_vanishes():
    r = integrate(lambda t: mp.log(2 * mp.sin(t / 2)), 0, 2 * pi(), 1e-12, hints={LEFT_LOG, RIGHT_LOG})
    assert abs(r.value.value) <= 1e-12
    assert r.singular_flags == {LEFT_LOG, RIGHT_LOG}
    # independent tanh-sinh evaluation of one half, doubled by the symmetry about pi
    with mpmath.workdps(40):
        half = mpmath.quad(lambda t: mpmath.log(2 * mpmath.sin(t / 2)), [0, mpmath.pi])
    assert abs(2 * half) < 1e-30


def test_tan_integral_matches_product():
    r = integrate(lambda t: t * mp.tan(mp.pi * t), 0, mp.mpf("0.25"), 1e-15)
    prod = multicos_product(2, mp.mpf("0.25"))
    assert abs(r.value.value + prod.log_value.value / pi()) <= 1e-15 + prod.log_value.err


@pytest.mark.parametrize("q,err_zero", [(Fraction(0), True), (Fraction(7, 16), True), (Fraction(1, 3), False)])
def test_rational_to_ext(q, err_zero):
    e = rational_to_ext(q)
    assert (e.err == 0) == err_zero
    assert abs(e.value - mp.mpf(q.numerator) / q.denominator) <= ulp(e.value)
    if not err_zero:
        assert 0 < e.err <= ulp(e.value)
    with mp.workdps(60):
        assert abs(e.value - mp.mpf(q.numerator) / q.denominator) <= e.err


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=50), min_size=1, max_size=40),
       st.fractions(min_value=-2, max_value=2, max_denominator=16),
       st.fractions(min_value=Fraction(1, 16), max_value=3, max_denominator=16))
def test_polynomial_exactness(coeffs, a, width):
    P = RationalPoly(coeffs)
    b = a + width
    exact = P.integral(a, b)
    r = integrate(lambda t: P(t), mp.mpf(a.numerator) / a.denominator, mp.mpf(b.numerator) / b.denominator, 1e-25)
    ref = mp.mpf(exact.numerator) / exact.denominator
    scale = max(abs(ref), sum(abs(float(c)) for c in coeffs) * float(max(abs(a), abs(b), 1)) ** len(coeffs))
    assert abs(r.value.value - ref) <= 10 * ulp(scale)
    assert r.subdivisions == 1


def test_budget_exhausted_is_raised():
    with pytest.raises(BudgetExhausted) as info:
        integrate(lambda t: mp.sqrt(t), 0, 1, 1e-30, max_panels=5)
    assert info.value.partial is not None


def test_tolerance_below_working_precision_fails_fast():
    with pytest.raises(BudgetExhausted, match="attainable"):
        integrate(lambda t: mp.exp(t), 0, 1, 1e-45)


def test_non_finite_sample():
    with pytest.raises(NonFiniteSample):
        integrate(lambda t: mp.inf if t > mp.mpf("0.3") else t, 0, 1, 1e-10)


def test_reversed_interval_is_domain_error():
    with pytest.raises(DomainError):
        integrate(lambda t: t, 1, 0)
    assert integrate(lambda t: t, 1, 1).value.value == 0


def test_unknown_hint_rejected():
    with pytest.raises(ValueError):
        integrate(lambda t: t, 0, 1, hints={"nonsense"})


def test_integrate_is_deterministic():
    f = lambda t: t ** 3 * mp.log(mp.sin(t))  # noqa: E731
    a = integrate(f, 0, 1, 1e-25, hints={LEFT_LOG})
    b = integrate(f, 0, 1, 1e-25, hints={LEFT_LOG})
    assert repr(a.value) == repr(b.value) and a.subdivisions == b.subdivisions


def test_constants_match_runtime():
    with mpmath.workdps(50):
        assert abs(pi() - mpmath.pi) < 1e-33
        assert abs(log2() - mpmath.ln2) < 1e-33
    assert tan_moment(1, 0).value == 0


reals = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False).filter(lambda v: abs(v) > 1e-6)
errs = st.floats(min_value=0, max_value=1e-3)


@settings(max_examples=100, deadline=None)
@given(reals, errs, reals, errs, st.sampled_from(["+", "-", "*", "/"]),
       st.floats(min_value=-1, max_value=1), st.floats(min_value=-1, max_value=1))
def test_extreal_error_propagation_is_sound(x, ex, y, ey, op, sx, sy):
    X, Y = ExtReal(x, ex), ExtReal(y, ey)
    if op == "/" and abs(y) <= ey:
        return
    ops = {"+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b, "/": lambda a, b: a / b}
    Z = ops[op](X, Y)
    with mp.workdps(80):
        # any point inside the input intervals must map inside the output interval
        xt = mp.mpf(x) + mp.mpf(sx) * mp.mpf(ex)
        yt = mp.mpf(y) + mp.mpf(sy) * mp.mpf(ey)
        true = ops[op](xt, yt)
        assert abs(true - Z.value) <= Z.err


def test_extreal_rejects_negative_error():
    with pytest.raises(ValueError):
        ExtReal(1, -1)
