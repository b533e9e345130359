"""Moment integrals  int t**r * kernel(t) dt  for the trigonometric kernels."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .dirichlet import bernoulli
from .numerics import LEFT_POLE, DomainError, ExtReal, gauss_moments, integrate, mp, to_mpf

# below this |t| the removable pole of t*cot is evaluated from its series
POLE_CUTOFF = 2.0 ** -20

DEFAULT_TOL = 1e-25


@lru_cache(maxsize=None)
def _zcot_coefficients(n):
    # z cot z = sum_k (-4)**k B_2k / (2k)! z**(2k)
    return Fraction((-4) ** n) * bernoulli(2 * n) / factorial(2 * n)


def t_cot(t, scale):
    """t * cot(scale * t), continuous at t = 0."""
    if abs(t) < POLE_CUTOFF:
        z2 = (scale * t) ** 2
        total, power, k = mp.mpf(1), mp.mpf(1), 0
        while True:
            k += 1
            power *= z2
            c = _zcot_coefficients(k)
            term = power * c.numerator / c.denominator
            total += term
            if abs(term) < mp.eps:
                break
        return total / scale
    return t / mp.tan(scale * t)


def t_cot_half(t):
    """t * cot(pi t / 2)."""
    return t_cot(t, mp.pi / 2)


def t_cot_full(t):
    """t * cot(pi t)."""
    return t_cot(t, mp.pi)


def _check_order(r, lowest=0):
    if not isinstance(r, int) or r < lowest:
        raise DomainError(f"moment order must be an integer >= {lowest}, got {r!r}")


def tan_moment(r: int, x, tol=DEFAULT_TOL) -> ExtReal:
    """int_0^x t**r tan(pi t) dt for 0 <= x < 1/2."""
    _check_order(r)
    x = to_mpf(x)
    if not 0 <= x < mp.mpf(1) / 2:
        raise DomainError("tan moment needs 0 <= x < 1/2")
    if x == 0:
        return ExtReal(0)
    return integrate(lambda t: t ** r * mp.tan(mp.pi * t), 0, x, tol).value


def cot_moment(r: int, x, tol=DEFAULT_TOL) -> ExtReal:
    """int_0^x t**r cot(pi t / 2) dt for r >= 1 and 0 <= x < 1."""
    _check_order(r, 1)
    x = to_mpf(x)
    if not 0 <= x < 1:
        raise DomainError("cot moment needs 0 <= x < 1")
    if x == 0:
        return ExtReal(0)
    return integrate(lambda t: t ** (r - 1) * t_cot_half(t), 0, x, tol, hints={LEFT_POLE}).value


def sine_moment(r: int, y, tol=DEFAULT_TOL) -> ExtReal:
    """int_0^y t**r cot(pi t) dt for r >= 1 and 0 <= y < 1."""
    _check_order(r, 1)
    y = to_mpf(y)
    if not 0 <= y < 1:
        raise DomainError("sine moment needs 0 <= y < 1")
    if y == 0:
        return ExtReal(0)
    return integrate(lambda t: t ** (r - 1) * t_cot_full(t), 0, y, tol, hints={LEFT_POLE}).value


def tan_moments(x, kmax: int, dps: int) -> list[ExtReal]:
    """All tan moments k = 0..kmax at ``dps`` digits from one shared rule."""
    with mp.workdps(dps):
        x = to_mpf(x)
        if x == 0:
            return [ExtReal(0)] * (kmax + 1)
        return gauss_moments(lambda t: mp.tan(mp.pi * t), 0, x, kmax, dps)


def sine_moments(y, kmax: int, dps: int) -> list[ExtReal]:
    """int_0^y t**k cot(pi t) dt for k = 1..kmax (index 0 of the list is k = 1)."""
    with mp.workdps(dps):
        y = to_mpf(y)
        if y == 0:
            return [ExtReal(0)] * kmax
        return gauss_moments(t_cot_full, 0, y, kmax - 1, dps)
