from fractions import Fraction

import mpmath
import numpy as np
import pytest

from multitrig.dirichlet import (
    OrderOutOfRange,
    SpecialValue,
    alternating_sum,
    bernoulli,
    beta_fn,
    catalan,
    eta,
    euler_number,
    lambda_fn,
    zeta,
)
from multitrig.numerics import ExtReal, mp


def _ref(fn, *args, dps=60):
    with mpmath.workdps(dps):
        return fn(*args)


def _euler_maclaurin_zeta(s, n=40, dps=50):
    # independent oracle: partial sum plus Euler-Maclaurin tail
    with mpmath.workdps(dps):
        head = mpmath.fsum(mpmath.mpf(k) ** -s for k in range(1, n))
        N = mpmath.mpf(n)
        tail = N ** (1 - s) / (s - 1) + N ** -s / 2
        fall = mpmath.mpf(s)
        for j in range(1, 15):
            b = mpmath.bernoulli(2 * j)
            tail += b / mpmath.factorial(2 * j) * fall * N ** (-s - 2 * j + 1)
            fall *= (s + 2 * j) * (s + 2 * j - 1)
        return head + tail


@pytest.mark.parametrize("s", [2, 3, 4, 5, 7, 10])
def test_zeta_against_euler_maclaurin(s):
    v = zeta(s).val
    assert abs(v.value - _euler_maclaurin_zeta(s)) <= v.err + 1e-30


def test_zeta_examples():
    assert abs(zeta(2).val.value - mp.pi ** 2 / 6) < 1e-32
    assert mp.nstr(zeta(3).val.value, 17) == "1.2020569031595943"
    assert abs(zeta(4).val.value - mp.pi ** 4 / 90) < 1e-32


def test_eta_examples():
    assert abs(eta(1).val.value - mp.ln2) < 1e-33
    assert abs(eta(2).val.value - mp.pi ** 2 / 12) < 1e-32
    assert abs(eta(3).val.value - Fraction(3, 4) * zeta(3).val.value) < 1e-32


def test_lambda_examples():
    assert abs(lambda_fn(2).val.value - mp.pi ** 2 / 8) < 1e-32
    assert abs(lambda_fn(3).val.value - Fraction(7, 8) * zeta(3).val.value) < 1e-32
    assert abs(lambda_fn(4).val.value - mp.pi ** 4 / 96) < 1e-32


def test_beta_examples():
    assert abs(beta_fn(1).val.value - mp.pi / 4) < 1e-33
    assert mp.nstr(beta_fn(2).val.value, 18) == "0.915965594177219015"
    assert abs(beta_fn(3).val.value - mp.pi ** 3 / 32) < 1e-32


def test_catalan():
    g = catalan()
    assert g.val == beta_fn(2).val
    assert mp.mpf("0.9159655941") < g.val.value < mp.mpf("0.9159655942")
    assert abs(g.val.value - _ref(lambda: +mpmath.catalan)) <= g.val.err + 1e-34


@pytest.mark.parametrize("s", range(2, 65, 3))
def test_error_bounds_hold_to_order_64(s):
    for fn, ref in ((zeta, mpmath.zeta), (eta, mpmath.altzeta), (lambda_fn, lambda s: (1 - mpmath.mpf(2) ** -s) * mpmath.zeta(s))):
        v = fn(s).val
        assert v.err <= 1e-25
        assert abs(v.value - _ref(ref, s)) <= v.err
    b = beta_fn(s).val
    bref = _ref(lambda: (mpmath.zeta(s, 0.25) - mpmath.zeta(s, 0.75)) / mpmath.mpf(4) ** s)
    assert b.err <= 1e-25 and abs(b.value - bref) <= b.err


def test_relation_web():
    for s in range(2, 41):
        z, e, l = zeta(s).val, eta(s).val, lambda_fn(s).val
        assert abs(e.value - (1 - Fraction(1, 2 ** (s - 1))) * z.value) <= e.err + z.err
        assert abs(l.value - (1 - Fraction(1, 2 ** s)) * z.value) <= l.err + z.err
        assert abs(l.value - (z.value + e.value) / 2) <= l.err + (z.err + e.err) / 2


def test_monotonicity():
    zs = [zeta(s).val.value for s in range(2, 30)]
    ls = [lambda_fn(s).val.value for s in range(2, 30)]
    es = [eta(s).val.value for s in range(2, 30)]
    bs = [beta_fn(s).val.value for s in range(2, 30)]
    assert all(a > b > 1 for a, b in zip(zs, zs[1:]))
    assert all(a > b > 1 for a, b in zip(ls, ls[1:]))
    assert all(a < b < 1 for a, b in zip(es, es[1:]))
    assert all(a < b < 1 for a, b in zip(bs, bs[1:]))


@pytest.mark.parametrize("s", [1, 2, 3])
def test_acceleration_against_ten_million_terms(s):
    n = 10 ** 7
    k = np.arange(n, dtype=np.float64)
    signs = np.where(k % 2 == 0, 1.0, -1.0)
    eta_direct = math_fsum(signs / (k + 1) ** s)
    beta_direct = math_fsum(signs / (2 * k + 1) ** s)
    # alternating tails are bounded by the first omitted term
    assert abs(float(eta(s).val.value) - eta_direct) <= 1 / (n + 1) ** s + 1e-12
    assert abs(float(beta_fn(s).val.value) - beta_direct) <= 1 / (2 * n + 1) ** s + 1e-12


def math_fsum(arr):
    import math

    return math.fsum(arr.tolist())


def test_alternating_sum_error_bound():
    v = alternating_sum(lambda k: 1 / mp.mpf(k + 1), n=10)
    assert abs(v.value - mp.ln2) <= v.err
    assert v.err < 1e-6


def test_exact_tables():
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(13) == 0
    assert [euler_number(n) for n in range(0, 9)] == [1, 0, -1, 0, 5, 0, -61, 0, 1385]


def test_higher_precision_request():
    v = zeta(5, dps=100).val
    with mpmath.workdps(110):
        assert abs(v.value - mpmath.zeta(5)) < mpmath.mpf(10) ** -98


@pytest.mark.parametrize("call", [lambda: zeta(1), lambda: eta(0), lambda: lambda_fn(1), lambda: beta_fn(0), lambda: zeta(2.5)])
def test_order_out_of_range(call):
    with pytest.raises(OrderOutOfRange):
        call()


def test_special_value_kind_checked():
    with pytest.raises(ValueError):
        SpecialValue("gamma", (), ExtReal(0))
