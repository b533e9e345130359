"""Multiple sine and multiple cosine functions.

Values are returned as logarithms.  Two independent routes exist for
every order r >= 2: the integral representation (default, fast and
accurate) and the defining infinite product, truncated and corrected by
its leading-order tail, used as a cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .dirichlet import beta_fn, eta, zeta
from .moments import sine_moment, tan_moment
from .numerics import DomainError, ExtReal, log2, mp, pi, to_mpf, ulp

DEFAULT_PRODUCT_TERMS = 2_000_000
_HEAD_TERMS = 100

# The integral of t**r cot(pi t / 2) over [0, x] equals
# (2**(r + s) / pi) log S_{r+s}(x / 2) with this shift s; fixed by
# comparing both candidate shifts against the truncated product.
SINE_INDEX_SHIFT = 1

ROUTES = ("product", "integral", "closed-form")


@dataclass(frozen=True)
class ProductTruncation:
    terms: int
    tail_bound: float


@dataclass(frozen=True)
class MultiFunValue:
    r: int
    x: object
    log_value: ExtReal
    route: str
    truncation: ProductTruncation | None = None


def log_Pr(r: int, u) -> ExtReal:
    """log of the convergence factor (1 - u) exp(u + u**2/2 + ... + u**r/r)."""
    if r < 0:
        raise DomainError("order must be nonnegative")
    u = to_mpf(u)
    if abs(u) >= 1:
        raise DomainError("log_Pr needs |u| < 1")
    if u == 0:
        return ExtReal(0)
    if abs(u) <= mp.mpf(1) / 2:
        # -sum_{j>r} u**j / j, free of the cancellation in the direct form
        terms = []
        j = r + 1
        p = u ** j
        while True:
            t = p / j
            terms.append(t)
            if abs(p) < mp.eps * abs(terms[0]):
                break
            p *= u
            j += 1
        s = -mp.fsum(terms)
        return ExtReal(s, abs(p) * 2 + len(terms) * ulp(s))
    s = mp.log(1 - u) + mp.fsum(u ** j / j for j in range(1, r + 1))
    return ExtReal(s, (r + 2) * ulp(max(abs(mp.log(1 - u)), abs(s), 1)))


def _paired_factor(r: int, u):
    """log P_r(u) + (-1)**(r-1) log P_r(-u), at the working precision."""
    a = log_Pr(r, u)
    b = log_Pr(r, -u)
    return a + b if r % 2 else a - b


def _bulk_series(r: int, x: float, n: np.ndarray, scale_den: float) -> tuple[float, float]:
    """Sum over n of -2 sum_{j>r, j=r+1 mod 2} x**j (scale_den/n)**(j-r+1) / j in float64.

    Returns (sum, magnitude of the summed terms) for rounding control.
    """
    v = scale_den / n.astype(np.float64)
    acc = np.zeros_like(v)
    j = r + 1
    xp = x ** j
    vp = v ** 2
    vmax = float(v[0])
    while True:
        acc += xp * vp / j
        if xp * vmax ** (j - r + 1) / j < 1e-22 * max(float(acc[0]), 1e-300):
            break
        j += 2
        xp *= x * x
        vp = vp * v * v
    terms = -2.0 * acc
    return math.fsum(terms), float(np.abs(terms).sum())


def _product_route(r, arg, terms, odd):
    """Truncated product for log C_r (odd=True) or log S_r, with tail correction.

    For C_r the n-th factor carries exponent (n/2)**(r-1) over odd n and
    argument arg/(n/2); for S_r it carries n**(r-1) over all n and arg/n.
    """
    arg = mp.mpf(arg)
    step = 2 if odd else 1
    den = 2 if odd else 1
    head_ns = [1 + step * i for i in range(_HEAD_TERMS)]
    head = []
    for n in head_ns:
        half = mp.mpf(n) / den
        head.append(_paired_factor(r, arg / half) * (half ** (r - 1)))
    head_sum = ExtReal(mp.fsum(h.value for h in head), mp.fsum(h.err for h in head))

    last = head_ns[-1] + step * (terms - 1)
    bulk_sum, bulk_mag = 0.0, 0.0
    xf = float(arg)
    if terms > _HEAD_TERMS:
        start = head_ns[-1] + step
        # chunks keep memory bounded
        chunk = 1 << 20
        for lo in range(start, last + 1, step * chunk):
            hi = min(last, lo + step * (chunk - 1))
            n = np.arange(lo, hi + 1, step, dtype=np.int64)
            s, m = _bulk_series(r, xf, n, float(den))
            bulk_sum += s
            bulk_mag += m
    else:
        last = head_ns[terms - 1]
        head_sum = ExtReal(mp.fsum(h.value for h in head[:terms]), mp.fsum(h.err for h in head[:terms]))

    # leading tail: -2 arg**(r+1)/(r+1) * sum_{n>last} (den/n)**2
    if odd:
        lead_sum = mp.zeta(2, mp.mpf(last + 2) / 2)  # sum over odd n > last of 4/n**2
    else:
        lead_sum = mp.zeta(2, last + 1)
    lead = -2 * arg ** (r + 1) / (r + 1) * lead_sum
    u_last = float(arg) * den / last
    # remaining tail, from the next order of the series
    if odd:
        rem = 16 * float(arg) ** (r + 3) / (3 * (r + 3) * (1 - u_last ** 2) * last ** 3)
    else:
        rem = 2 * float(arg) ** (r + 3) / (3 * (r + 3) * (1 - u_last ** 2) * last ** 3)
    rounding = 64 * 2.0 ** -52 * bulk_mag
    value = head_sum.value + mp.mpf(bulk_sum) + lead
    err = head_sum.err + mp.mpf(rem) + mp.mpf(rounding) + 4 * ulp(value)
    return ExtReal(value, err), ProductTruncation(terms, rem)


def multicos_product(r: int, x, terms: int = DEFAULT_PRODUCT_TERMS) -> MultiFunValue:
    """log C_r(x) from the product over odd n, first ``terms`` factors."""
    _check_cos(r, x)
    x = to_mpf(x)
    if x == 0:
        return MultiFunValue(r, x, ExtReal(0), "product", ProductTruncation(terms, 0.0))
    val, trunc = _product_route(r, x, terms, odd=True)
    if r == 1:
        val = val + ExtReal(log2(), ulp(log2()))
    return MultiFunValue(r, x, val, "product", trunc)


def multisin_product(r: int, y, terms: int = DEFAULT_PRODUCT_TERMS) -> MultiFunValue:
    """log S_r(y) from the product over n >= 1, first ``terms`` factors."""
    _check_sin(r, y)
    y = to_mpf(y)
    if y == 0:
        return MultiFunValue(r, y, ExtReal(0), "product", ProductTruncation(terms, 0.0))
    val, trunc = _product_route(r, y, terms, odd=False)
    if r == 1:
        pre = mp.log(2 * pi() * y)
    else:
        pre = y ** (r - 1) / (r - 1)
    val = val + ExtReal(pre, 2 * ulp(pre))
    return MultiFunValue(r, y, val, "product", trunc)


def _check_cos(r, x):
    if not isinstance(r, int) or r < 1:
        raise DomainError("multiple cosine order must be an integer >= 1")
    if not 0 <= to_mpf(x) < mp.mpf(1) / 2:
        raise DomainError("multiple cosine argument must lie in [0, 1/2)")


def _check_sin(r, y):
    if not isinstance(r, int) or r < 1:
        raise DomainError("multiple sine order must be an integer >= 1")
    if not 0 <= to_mpf(y) < 1:
        raise DomainError("multiple sine argument must lie in [0, 1)")


def log_multicos(r: int, x, route: str | None = None) -> MultiFunValue:
    """log C_r(x) for 0 <= x < 1/2.

    r = 1 uses log(2 cos(pi x)); r >= 2 defaults to
    -pi * int_0^x t**(r-1) tan(pi t) dt.
    """
    _check_cos(r, x)
    route = route or ("closed-form" if r == 1 else "integral")
    x = to_mpf(x)
    if route == "product":
        return multicos_product(r, x)
    if route == "closed-form":
        if r != 1:
            raise ValueError("closed form only for order 1")
        v = mp.log(2 * mp.cos(pi() * x))
        return MultiFunValue(r, x, ExtReal(v, 4 * ulp(v) + ulp(1)), route)
    if route != "integral":
        raise ValueError(f"unknown route {route!r}")
    if r == 1:
        raise ValueError("order 1 has no integral route; use the closed form")
    p = pi()
    val = -(tan_moment(r - 1, x) * ExtReal(p, ulp(p)))
    return MultiFunValue(r, x, val, route)


def log_multisin(r: int, y, route: str | None = None) -> MultiFunValue:
    """log S_r(y) for 0 <= y < 1.

    r = 1 uses log(2 sin(pi y)) and diverges at y = 0; r >= 2 defaults to
    pi * int_0^y t**(r-1) cot(pi t) dt.
    """
    _check_sin(r, y)
    route = route or ("closed-form" if r == 1 else "integral")
    y = to_mpf(y)
    if r == 1 and y == 0:
        raise DomainError("log S_1 diverges at 0")
    if route == "product":
        return multisin_product(r, y)
    if route == "closed-form":
        if r != 1:
            raise ValueError("closed form only for order 1")
        v = mp.log(2 * mp.sin(pi() * y))
        return MultiFunValue(r, y, ExtReal(v, 4 * ulp(v) + ulp(1)), route)
    if route != "integral":
        raise ValueError(f"unknown route {route!r}")
    if r == 1:
        raise ValueError("order 1 has no integral route; use the closed form")
    p = pi()
    val = sine_moment(r - 1, y) * ExtReal(p, ulp(p))
    return MultiFunValue(r, y, val, route)


def multicos_quarter_closed_form(r: int) -> ExtReal:
    """Closed form of log C_r(1/4) in eta and beta values, r >= 2."""
    if r < 2:
        raise DomainError("closed form holds for r >= 2")
    p = ExtReal(pi(), ulp(pi()))
    l2 = ExtReal(log2(), ulp(log2()))
    total = l2 * Fraction(1, 2 ** (2 * r - 1))
    # sin(r pi / 2) is 0, 1 or -1
    sign = (0, 1, 0, -1)[r % 4]
    if sign:
        total = total - eta(r).val * Fraction(sign * factorial(r - 1), 2 ** (r - 1)) / _pow(p, r - 1)
    beta_sum = ExtReal(0)
    for k in range((r - 2) // 2 + 1):
        c = Fraction((-1) ** k * factorial(2 * k) * comb(r - 2, 2 * k) * 2 ** (2 * k + 1))
        beta_sum = beta_sum + beta_fn(2 * k + 2).val * c / _pow(p, 2 * k + 1)
    total = total - beta_sum * Fraction(r - 1, 2 ** (2 * (r - 1)))
    eta_sum = ExtReal(0)
    for k in range(1, -(-(r - 2) // 2) + 1):
        c = Fraction((-1) ** (k - 1) * factorial(2 * k - 1) * comb(r - 2, 2 * k - 1))
        eta_sum = eta_sum + eta(2 * k + 1).val * c / _pow(p, 2 * k)
    total = total - eta_sum * Fraction(r - 1, 2 ** (2 * r - 1))
    return total


def _pow(p: ExtReal, n: int) -> ExtReal:
    out = ExtReal(1)
    for _ in range(n):
        out = out * p
    return out


def verify_quarter_closed_form(r: int) -> ExtReal:
    """|log C_r(1/4) - closed form| with its propagated error bound."""
    if not 2 <= r <= 12:
        raise DomainError("supported for 2 <= r <= 12")
    lhs = log_multicos(r, mp.mpf(1) / 4).log_value
    return abs(lhs - multicos_quarter_closed_form(r))


def zeta3_from_multicos(route: str = "integral") -> ExtReal:
    """zeta(3) rebuilt from log C_3(1/4) and Catalan's constant."""
    c3 = log_multicos(3, mp.mpf(1) / 4, route=route).log_value
    p = ExtReal(pi(), ulp(pi()))
    g = beta_fn(2).val
    l2 = ExtReal(log2(), ulp(log2()))
    inner = g * 4 / p + c3 * 16 - l2 * Fraction(1, 2)
    return p * p * Fraction(4, 21) * inner


def verify_zeta3_rebuild(route: str = "integral") -> ExtReal:
    return abs(zeta3_from_multicos(route) - zeta(3).val)
