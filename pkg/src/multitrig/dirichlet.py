"""Riemann zeta, Dirichlet eta, lambda and beta at integer arguments."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .numerics import ExtReal, NumericsError, log2, mp, pi, ulp

KINDS = ("zeta", "eta", "lambda", "beta", "catalan", "logMultiCos", "logMultiSin")


class OrderOutOfRange(NumericsError, ValueError):
    pass


@dataclass(frozen=True)
class SpecialValue:
    kind: str
    params: tuple
    val: ExtReal

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown special value kind {self.kind!r}")


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    table = _bernoulli_table(n)
    return table[n]


@lru_cache(maxsize=8)
def _bernoulli_table(n):
    # round n up so repeated calls share a table
    top = max(64, 1 << (n.bit_length()))
    B = [Fraction(0)] * (top + 1)
    B[0] = Fraction(1)
    for m in range(1, top + 1):
        B[m] = -sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1)
    return tuple(B)


@lru_cache(maxsize=None)
def euler_number(n: int) -> int:
    """Exact Euler (secant) number E_n; zero for odd n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n % 2:
        return 0
    E = [1]
    for m in range(1, n // 2 + 1):
        E.append(-sum(comb(2 * m, 2 * j) * E[j] for j in range(m)))
    return E[n // 2]


def cvz_terms_needed(dps: int) -> int:
    """Terms for the Chebyshev-weighted alternating sum to reach 10**-(dps+2)."""
    # error <= 2 a_0 / (3 + sqrt 8)**n
    return int((dps + 3) * 2.30258509299 / 1.76274717403) + 2


def alternating_sum(a, n: int | None = None):
    """Sum of (-1)**k a(k), k >= 0, for a totally monotone sequence a.

    Uses the Cohen / Rodriguez Villegas / Zagier weights built from shifted
    Chebyshev polynomials.  Returns an ExtReal whose error combines the
    acceleration bound 2 a(0) / (3 + sqrt 8)**n with summation rounding.
    """
    if n is None:
        n = cvz_terms_needed(mp.dps)
    with mp.workdps(mp.dps + 10):
        d = (3 + mp.sqrt(8)) ** n
        d = (d + 1 / d) / 2
        b = mp.mpf(-1)
        c = -d
        terms = []
        for k in range(n):
            c = b - c
            terms.append(c * a(k))
            b = b * (k + n) * (k - n) / ((k + mp.mpf(1) / 2) * (k + 1))
        s = mp.fsum(terms) / d
        bound = 2 * abs(a(0)) / (3 + mp.sqrt(8)) ** n
    return ExtReal(+s, bound + n * ulp(s))


def _check(s, lowest, name):
    if not isinstance(s, int) or isinstance(s, bool):
        raise OrderOutOfRange(f"{name} needs an integer order, got {s!r}")
    if s < lowest:
        raise OrderOutOfRange(f"{name}({s}) is outside the supported range s >= {lowest}")


def _pi_power(s):
    p = pi()
    return ExtReal(p ** s, ulp(p ** s) * (s + 1))


def _zeta_ext(s: int) -> ExtReal:
    if s % 2 == 0:
        k = s // 2
        coef = Fraction((-1) ** (k + 1)) * bernoulli(s) * 2 ** s / (2 * factorial(s))
        return _pi_power(s) * coef
    # odd s: zeta(s) = eta(s) / (1 - 2**(1-s))
    e = alternating_sum(lambda k: 1 / mp.mpf(k + 1) ** s)
    return e / (1 - Fraction(1, 2 ** (s - 1)))


def zeta(s: int, dps: int | None = None) -> SpecialValue:
    """Riemann zeta at an integer s >= 2."""
    _check(s, 2, "zeta")
    with mp.workdps(dps or mp.dps):
        return SpecialValue("zeta", (s,), _zeta_ext(s))


def eta(s: int, dps: int | None = None) -> SpecialValue:
    """Alternating zeta sum_{n>=1} (-1)**(n+1) / n**s."""
    _check(s, 1, "eta")
    with mp.workdps(dps or mp.dps):
        if s == 1:
            v = log2()
            val = ExtReal(v, ulp(v))
        else:
            val = _zeta_ext(s) * (1 - Fraction(1, 2 ** (s - 1)))
        return SpecialValue("eta", (s,), val)


def lambda_fn(s: int, dps: int | None = None) -> SpecialValue:
    """Odd-denominator zeta sum_{n>=0} 1 / (2n+1)**s."""
    _check(s, 2, "lambda")
    with mp.workdps(dps or mp.dps):
        return SpecialValue("lambda", (s,), _zeta_ext(s) * (1 - Fraction(1, 2 ** s)))


def _beta_ext(s: int) -> ExtReal:
    if s % 2:
        k = (s - 1) // 2
        coef = Fraction((-1) ** k * euler_number(2 * k), 4 ** (k + 1) * factorial(2 * k))
        return _pi_power(s) * coef
    return alternating_sum(lambda k: 1 / mp.mpf(2 * k + 1) ** s)


def beta_fn(s: int, dps: int | None = None) -> SpecialValue:
    """Dirichlet beta sum_{n>=0} (-1)**n / (2n+1)**s."""
    _check(s, 1, "beta")
    with mp.workdps(dps or mp.dps):
        return SpecialValue("beta", (s,), _beta_ext(s))


def catalan(dps: int | None = None) -> SpecialValue:
    with mp.workdps(dps or mp.dps):
        return SpecialValue("catalan", (), _beta_ext(2))
