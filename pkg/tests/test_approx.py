import random
from fractions import Fraction

import pytest

from multitrig.approx import (
    ApproximationError,
    ApproxTarget,
    PreconditionError,
    UnresolvedIndex,
    approximate_smooth,
    audit_certificate,
    build_Pn,
    certify,
    chebyshev_fit,
    construct_f_alpha,
    cos_log_assembly,
    cos_log_coefficients,
    cot_assembly,
    cot_zeta_coefficients,
    evaluate_alpha,
    functional_value,
    ladder_rungs,
    poly_functional,
    recompute_residual,
    sine_basis_coefficients,
    tan_basis_coefficients,
    weight_poly,
)
from multitrig.dirichlet import beta_fn, zeta
from multitrig.identities import coslog_moment_rhs
from multitrig.moments import cot_moment, tan_moment
from multitrig.multifun import log_multicos, log_multisin
from multitrig.numerics import log2, mp, pi
from multitrig.poly import RationalPoly, derivative_at

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)


def _mpf(q):
    return mp.mpf(q.numerator) / q.denominator


def test_weight_poly():
    assert weight_poly(1) == RationalPoly([0, 0, 1, -2, 1])
    assert derivative_at(weight_poly(1), 2, 0) == 2
    assert weight_poly(2) == RationalPoly([0, 0, 0, 0, 1, -4, 6, -4, 1])
    with pytest.raises(ValueError):
        weight_poly(0)


def test_build_Pn():
    assert build_Pn(RationalPoly([1]), 1) == weight_poly(1)
    P = build_Pn(RationalPoly([0, 1]), 1)
    assert P(Fraction(1)) == 0
    assert derivative_at(P, 3, 0) == 6
    rng = random.Random(1)
    for k0 in (1, 2, 3):
        s = RationalPoly(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(8))
        P = build_Pn(s, k0)
        assert P.degree == 4 * k0 + s.degree
        for j in range(2 * k0):
            assert derivative_at(P, j, 0) == 0 and derivative_at(P, j, 1) == 0


def test_coefficient_formula_examples():
    W = weight_poly(1)
    assert tan_basis_coefficients(W) == [(2, -1), (3, 2), (4, -1)]
    assert sine_basis_coefficients(W, index_shift=0) == [(2, 4), (3, -16), (4, 16)]
    assert sine_basis_coefficients(W) == [(2, 8), (3, -32), (4, 32)]
    assert cot_zeta_coefficients(W).zeta[0] == (1, -7)
    assert cot_zeta_coefficients(W).log2 == 0
    zero = RationalPoly()
    assert tan_basis_coefficients(zero) == [] and sine_basis_coefficients(zero) == []
    assert cot_zeta_coefficients(zero).zeta == []


def test_cos_log_coefficients_vanish_below_the_weight_order():
    co = cos_log_coefficients(weight_poly(1))
    beta = dict(co.beta)
    etas = dict(co.eta)
    assert beta[0] == 0 and beta[1] != 0
    assert etas[1] == 0 and etas[2] != 0
    assert co.log2 == -Fraction(1, 30)


def test_cot_coefficients_drop_leading_zeros():
    co = cot_zeta_coefficients(weight_poly(2))
    assert co.zeta[0][0] == 2


def test_preconditions():
    with pytest.raises(PreconditionError):
        cos_log_coefficients(RationalPoly([1, 1]))
    with pytest.raises(PreconditionError):
        cot_zeta_coefficients(RationalPoly([1]))
    with pytest.raises(UnresolvedIndex):
        sine_basis_coefficients(weight_poly(1), index_shift=2)


def test_smooth_fit_reproduces_constants_and_lines():
    c = Fraction(3, 7)
    P = approximate_smooth(lambda t: _mpf(c), QUARTER, 12, 1, denom_bound=100)
    assert P == RationalPoly([c])
    P = approximate_smooth(lambda t: t, QUARTER, 5, 1)
    assert P == RationalPoly([0, 1])
    with pytest.raises(ApproximationError):
        approximate_smooth(lambda t: mp.exp(40 * t), QUARTER, 4, 1, target_error=1e-6)


def test_bump_fit_converges_on_a_dense_grid():
    f = construct_f_alpha("sqrt(2)", "multicos", QUARTER, 1, "bump")
    errs = []
    for n in (32, 64):
        P = approximate_smooth(f, QUARTER, n, 2)
        with mp.workdps(150):
            errs.append(max(abs(P(mp.mpf(i) / (4 * 4095)) - f(mp.mpf(i) / (4 * 4095))) for i in range(4096)))
    assert errs[0] >= 2 * errs[1]


def test_fit_error_estimate_tracks_degree():
    f = construct_f_alpha(1, "multicos", QUARTER, 1, "bump")
    small = chebyshev_fit(f, QUARTER, 16, 10 ** 12).error_estimate
    large = chebyshev_fit(f, QUARTER, 64, 10 ** 12).error_estimate
    assert large < small


def test_functional_of_zero_and_constant():
    for basis, x in (("multicos", QUARTER), ("multisin", HALF), ("zetaBeta", None), ("lupuWu", None)):
        assert functional_value(construct_f_alpha(0, basis, x or 1, 1), basis, x or 1, 1).value == 0
    K = functional_value(lambda t: mp.mpf(1), "multicos", QUARTER, 1)
    assert K.value > 0


def test_constant_functional_on_cot_basis_matches_closed_form():
    K = functional_value(lambda t: mp.mpf(1), "lupuWu", 1, 1)
    closed = cot_assembly(weight_poly(1))
    assert abs(K.value - closed.value) <= 1e-18


def test_construct_f_alpha_hits_alpha():
    f = construct_f_alpha("sqrt(2)", "multicos", QUARTER, 1)
    v = functional_value(f, "multicos", QUARTER, 1)
    assert abs(v.value - mp.sqrt(2)) <= 1e-18
    g = construct_f_alpha("-sqrt(2)", "multicos", QUARTER, 1, "bump")
    h = construct_f_alpha("sqrt(2)", "multicos", QUARTER, 1, "bump")
    for t in ("0.1", "0.125", "0.2"):
        assert g(mp.mpf(t)) == -h(mp.mpf(t))
    assert construct_f_alpha(0, "multicos", QUARTER, 1)(mp.mpf("0.1")) == 0


def test_bump_profile_is_compactly_supported():
    h = construct_f_alpha(1, "zetaBeta", 1, 1, "bump")
    assert h(mp.mpf("0.1")) == 0 and h(mp.mpf("0.9")) == 0
    assert h(mp.mpf("0.5")) == h(mp.mpf("0.4"))
    # log cos is negative on (0, 1), so the scale is negative
    assert h(mp.mpf("0.5")) < h(mp.mpf("0.3")) < 0


def test_functional_linearity():
    rng = random.Random(9)
    f1 = construct_f_alpha(1, "multicos", QUARTER, 1, "bump")
    f2 = lambda t: mp.exp(t)  # noqa: E731
    for _ in range(3):
        c1 = Fraction(rng.randint(-30, 30), rng.randint(1, 13))
        c2 = Fraction(rng.randint(-30, 30), rng.randint(1, 13))
        a, b = _mpf(c1), _mpf(c2)
        combined = functional_value(lambda t: a * f1(t) + b * f2(t), "multicos", QUARTER, 1, tol=1e-24)
        parts = a * functional_value(f1, "multicos", QUARTER, 1, tol=1e-24).value \
            + b * functional_value(f2, "multicos", QUARTER, 1, tol=1e-24).value
        assert abs(combined.value - parts) <= 1e-18


def _self_consistency(basis, x, P):
    alpha = poly_functional(P, basis, x, tol=1e-28).value
    if basis == "multicos":
        total = mp.fsum(_mpf(c) * log_multicos(k + 1, _mpf(x)).log_value.value for k, c in tan_basis_coefficients(P)) / pi()
    elif basis == "multisin":
        total = mp.fsum(_mpf(c) * log_multisin(k + 1, _mpf(x) / 2).log_value.value
                        for k, c in sine_basis_coefficients(P)) / pi()
    elif basis == "zetaBeta":
        total = cos_log_assembly(P).value
    else:
        total = cot_assembly(P).value
    return abs(alpha - total)


@pytest.mark.parametrize("basis,x", [("multicos", QUARTER), ("multisin", HALF), ("zetaBeta", None), ("lupuWu", None)])
def test_certificate_form_polynomial_is_reproduced(basis, x):
    P = build_Pn(RationalPoly([Fraction(2, 3), Fraction(-1, 5), Fraction(1, 7)]), 1)
    assert _self_consistency(basis, x, P) <= 1e-15


def test_tan_moment_sum_matches_coefficient_sum():
    P = build_Pn(RationalPoly([1, Fraction(-3, 4)]), 1)
    x = mp.mpf(1) / 4
    lhs = mp.fsum(_mpf(P.coeff(k)) * tan_moment(k, x).value for k in range(P.degree + 1))
    rhs = mp.fsum(_mpf(c) * log_multicos(k + 1, x).log_value.value for k, c in tan_basis_coefficients(P)) / pi()
    assert abs(lhs - rhs) <= 1e-18


def test_cot_moment_sum_matches_sine_coefficient_sum():
    P = build_Pn(RationalPoly([1, Fraction(-3, 4)]), 1)
    x = mp.mpf(1) / 2
    lhs = mp.fsum(_mpf(P.coeff(k)) * cot_moment(k, x).value for k in range(1, P.degree + 1))
    rhs = mp.fsum(_mpf(c) * log_multisin(k + 1, x / 2).log_value.value for k, c in sine_basis_coefficients(P)) / pi()
    assert abs(lhs - rhs) <= 1e-18


def test_cos_log_coefficients_term_by_term_for_monomials():
    # derivative-based coefficients against the monomial closed forms
    for m in range(1, 9):
        assert abs(cos_log_assembly(RationalPoly.monomial(m)).value - coslog_moment_rhs(m).value) <= 1e-28


def test_cot_closed_form_base_case():
    # P = t^2: c_1 = -2 (2 (3/4) + 2) = -7, log 2 term 2 P(1) = 2
    P = RationalPoly([0, 0, 1])
    assert cot_zeta_coefficients(P).zeta == [(1, -7)]
    expected = 2 * log2() / pi() - 7 * zeta(3).val.value / pi() ** 3
    quad = poly_functional(P, "lupuWu")
    assert abs(quad.value - expected) <= 1e-9
    assert abs(cot_assembly(P).value - expected) <= 1e-30


def test_alpha_expressions():
    assert evaluate_alpha("sqrt(2)") == mp.sqrt(2)
    assert evaluate_alpha("-3/4") == mp.mpf(-3) / 4
    assert abs(evaluate_alpha("zeta(3) - catalan") - (zeta(3).val.value - beta_fn(2).val.value)) < 1e-30
    for bad in ("__import__('os')", "x + 1", "sqrt(2, 3)", "[1]"):
        with pytest.raises(ValueError):
            evaluate_alpha(bad)


def test_target_validation():
    with pytest.raises(ValueError):
        ApproxTarget("1", "multicos", None, 1, 1, 8)
    with pytest.raises(ValueError):
        ApproxTarget("1", "multicos", HALF, 1, 1, 8)
    with pytest.raises(ValueError):
        ApproxTarget("1", "nope", None, 1, 1, 8)
    with pytest.raises(ValueError):
        ApproxTarget("1", "lupuWu", None, 1, 1, 2)
    assert ApproxTarget("1", "lupuWu", QUARTER, 1, 1, 8).x is None


def test_ladder_rungs():
    assert ladder_rungs(64) == [16, 32]
    assert ladder_rungs(8) == [3, 4]
    assert ladder_rungs(4) == [3]


def test_zero_alpha_certificate():
    cert = certify(ApproxTarget("0", "multicos", QUARTER, 1, 2, 8))
    assert cert.coefficients == [] and cert.residual == 0 and cert.passed


def test_certificate_is_exact_and_auditable():
    cert = certify(ApproxTarget("sqrt(2)", "lupuWu", None, 1, 1, 16), profile="bump")
    assert all(isinstance(e.c, Fraction) for e in cert.coefficients)
    assert abs(recompute_residual(cert) - cert.residual) <= 1e-20
    audit = audit_certificate(cert)
    assert audit.passed and audit.coefficients_match
    assert cert.resolutions["sine_index_shift"] == 1


def test_zeta_beta_certificate_needs_log_two():
    cert = certify(ApproxTarget("sqrt(2)", "zetaBeta", None, 1, 1, 16), profile="bump")
    assert any(e.element == "log(2)" for e in cert.coefficients)
    assert cert.extras["residual_without_log2"] > 1e3 * cert.residual


def test_constant_profile_certificate():
    cert = certify(ApproxTarget("sqrt(2)", "multicos", QUARTER, 1, 1, 8))
    assert cert.residual < 1e-6
    assert cert.passed


def test_unknown_profile():
    with pytest.raises(ValueError):
        certify(ApproxTarget("1", "multicos", QUARTER, 1, 1, 8), profile="wavy")
