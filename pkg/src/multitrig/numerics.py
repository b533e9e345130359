"""Extended-precision carrier and quadrature engine.

All arithmetic runs in a private mpmath context so that callers' global
mpmath settings are never touched.  The default working precision is 34
significant digits; routines that need more take an explicit ``dps``.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from mpmath.ctx_mp import MPContext

WORKING_DPS = 34

mp = MPContext()
mp.dps = WORKING_DPS

# 40-digit literals, checked against mpmath at import time.
PI_LITERAL = "3.141592653589793238462643383279502884197"
LOG2_LITERAL = "0.6931471805599453094172321214581765680755"

DEFAULT_PANEL_BUDGET = 2 ** 16
GL_ORDER = 20

LEFT_LOG = "left-log-singular"
RIGHT_LOG = "right-log-singular"
LEFT_POLE = "left-pole-removed"
_KNOWN_HINTS = frozenset({LEFT_LOG, RIGHT_LOG, LEFT_POLE})


class NumericsError(Exception):
    pass


class DomainError(NumericsError, ValueError):
    pass


class NonFiniteSample(NumericsError):
    def __init__(self, t):
        super().__init__(f"integrand returned a non-finite value at t={mp.nstr(t, 20)}")
        self.t = t


class BudgetExhausted(NumericsError):
    """Quadrature did not reach the requested tolerance."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


def _check_constants():
    with mp.workdps(60):
        for name, literal, ref in (("pi", PI_LITERAL, mp.pi), ("log 2", LOG2_LITERAL, mp.ln2)):
            if abs(mp.mpf(literal) - ref) > mp.mpf(10) ** -39:
                raise RuntimeError(f"stored constant {name} disagrees with runtime value")


_check_constants()


def pi(dps: int | None = None):
    """pi at the current (or given) precision."""
    if (dps or mp.dps) <= 38:
        return +mp.mpf(PI_LITERAL)
    with mp.workdps(dps or mp.dps):
        return +mp.pi


def log2(dps: int | None = None):
    if (dps or mp.dps) <= 38:
        return +mp.mpf(LOG2_LITERAL)
    with mp.workdps(dps or mp.dps):
        return +mp.ln2


def ulp(x):
    """One unit in the last place of |x| at the current precision."""
    x = mp.mpf(x)
    if x == 0:
        return mp.mpf(0)
    return mp.ldexp(mp.mpf(1), int(mp.floor(mp.log(abs(x), 2))) + 1 - mp.prec)


def to_mpf(v):
    if isinstance(v, Fraction):
        return mp.mpf(v.numerator) / v.denominator
    if isinstance(v, ExtReal):
        return v.value
    return mp.mpf(v)


@dataclass(frozen=True)
class ExtReal:
    """A real number with a conservative absolute error bound."""

    value: object
    err: object = field(default_factory=lambda: mp.mpf(0))

    def __post_init__(self):
        object.__setattr__(self, "value", mp.mpf(self.value))
        err = mp.mpf(self.err)
        if err < 0 or not mp.isfinite(err):
            raise ValueError("error bound must be finite and nonnegative")
        object.__setattr__(self, "err", err)

    @staticmethod
    def coerce(v) -> "ExtReal":
        if isinstance(v, ExtReal):
            return v
        if isinstance(v, Fraction):
            return rational_to_ext(v)
        if isinstance(v, int):
            return rational_to_ext(Fraction(v))
        return ExtReal(v)

    def _rounded(self, value, err) -> "ExtReal":
        value = +value
        return ExtReal(value, err + ulp(value))

    def __add__(self, other):
        o = ExtReal.coerce(other)
        return self._rounded(self.value + o.value, self.err + o.err)

    __radd__ = __add__

    def __sub__(self, other):
        o = ExtReal.coerce(other)
        return self._rounded(self.value - o.value, self.err + o.err)

    def __rsub__(self, other):
        return ExtReal.coerce(other) - self

    def __neg__(self):
        return ExtReal(-self.value, self.err)

    def __abs__(self):
        return ExtReal(abs(self.value), self.err)

    def __mul__(self, other):
        o = ExtReal.coerce(other)
        err = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
        return self._rounded(self.value * o.value, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = ExtReal.coerce(other)
        if abs(o.value) <= o.err:
            raise ZeroDivisionError("divisor interval contains zero")
        lo = abs(o.value) - o.err
        q = self.value / o.value
        err = (self.err + abs(q) * o.err) / lo
        return self._rounded(q, err)

    def __rtruediv__(self, other):
        return ExtReal.coerce(other) / self

    def __float__(self):
        return float(self.value)

    def contains(self, x) -> bool:
        return abs(self.value - to_mpf(x)) <= self.err

    def __repr__(self):
        return f"ExtReal({mp.nstr(self.value, 34)}, err={mp.nstr(self.err, 3)})"


def rational_to_ext(q) -> ExtReal:
    """Round an exact rational into the working precision."""
    q = Fraction(q)
    value = mp.mpf(q.numerator) / q.denominator
    den = q.denominator
    exact = (den & (den - 1)) == 0 and abs(q.numerator).bit_length() <= mp.prec
    return ExtReal(value, 0 if exact else ulp(value))


@dataclass(frozen=True)
class QuadratureResult:
    value: ExtReal
    err_estimate: object
    subdivisions: int
    singular_flags: frozenset = frozenset()


_gl_cache: dict = {}


def gauss_legendre(n: int, dps: int | None = None):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    dps = dps or mp.dps
    key = (n, dps)
    if key in _gl_cache:
        return _gl_cache[key]
    nodes, weights = [], []
    with mp.workdps(dps + 10):
        for i in range(1, n // 2 + 1):
            x = mp.mpf(math.cos(math.pi * (i - 0.25) / (n + 0.5)))
            for _ in range(100):
                p0, p1 = mp.mpf(1), x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mp.mpf(10) ** -(dps + 8):
                    break
            p0, p1 = mp.mpf(1), x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            nodes += [-x, x]
            weights += [w, w]
        if n % 2:
            x = mp.mpf(0)
            p0, p1 = mp.mpf(1), x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1)
            nodes.append(x)
            weights.append(2 / ((1 - x * x) * dp * dp))
    order = sorted(range(n), key=lambda i: nodes[i])
    rule = (tuple(nodes[i] for i in order), tuple(weights[i] for i in order))
    _gl_cache[key] = rule
    return rule


def _panel_rule(g, lo, hi, m):
    """Gauss-Legendre estimates with m and 2m points plus a noise floor."""
    half = (hi - lo) / 2
    mid = (hi + lo) / 2
    out = []
    mag = mp.mpf(0)
    for npts in (m, 2 * m):
        xs, ws = gauss_legendre(npts)
        terms = []
        for x, w in zip(xs, ws):
            t = mid + half * x
            y = g(t)
            if not mp.isfinite(y):
                raise NonFiniteSample(t)
            terms.append(w * y)
        s = mp.fsum(terms) * half
        mag = max(mag, mp.fsum(abs(v) for v in terms) * abs(half))
        out.append(s)
    return out[1], abs(out[1] - out[0]), 16 * mag * mp.eps


def integrate(
    f: Callable,
    a,
    b,
    tol=1e-25,
    hints: Iterable[str] = (),
    points: Sequence = (),
    max_panels: int = DEFAULT_PANEL_BUDGET,
) -> QuadratureResult:
    """Adaptive Gauss-Legendre quadrature of f over [a, b].

    Endpoint log singularities named in ``hints`` are smoothed with the
    substitution t = a + (b - a) u**2 (mirrored at the right end) before
    the adaptive bisection sees them.  ``points`` are interior breakpoints
    where the integrand is known to be less regular.

    Raises BudgetExhausted if the requested tolerance is not met.
    """
    hints = frozenset(hints)
    unknown = hints - _KNOWN_HINTS
    if unknown:
        raise ValueError(f"unknown singularity hints: {sorted(unknown)}")
    a, b, tol = mp.mpf(a), mp.mpf(b), mp.mpf(tol)
    if not a < b:
        if a == b:
            return QuadratureResult(ExtReal(0), mp.mpf(0), 0, hints)
        raise DomainError("integration requires a < b")

    cuts = [a] + sorted(mp.mpf(p) for p in points if a < mp.mpf(p) < b) + [b]
    if LEFT_LOG in hints and RIGHT_LOG in hints and len(cuts) == 2:
        cuts = [a, (a + b) / 2, b]

    # (transformed integrand, lower, upper) in the variable the rule sees
    jobs = []
    last = len(cuts) - 2
    for i in range(len(cuts) - 1):
        lo, hi = cuts[i], cuts[i + 1]
        if i == 0 and LEFT_LOG in hints:
            h = hi - lo
            jobs.append((lambda u, lo=lo, h=h: f(lo + h * u * u) * 2 * h * u, mp.mpf(0), mp.mpf(1)))
        elif i == last and RIGHT_LOG in hints:
            h = hi - lo
            jobs.append((lambda u, hi=hi, h=h: f(hi - h * u * u) * 2 * h * u, mp.mpf(0), mp.mpf(1)))
        else:
            jobs.append((f, lo, hi))

    # Global adaptive bisection: always split the panel with the largest
    # error estimate.  Ties break on (job, position) so the order is fixed.
    heap = []
    done = []
    panels = 0
    for jid, (g, lo, hi) in enumerate(jobs):
        val, err, noise = _panel_rule(g, lo, hi, GL_ORDER)
        panels += 1
        heapq.heappush(heap, (-err, jid, lo, hi, val, noise))
    total = mp.fsum(-e[0] for e in heap)
    floor = 4 * mp.eps * mp.fsum(abs(e[4]) for e in heap)
    if tol < floor:
        partial = QuadratureResult(ExtReal(mp.fsum(e[4] for e in heap), total), total, panels, hints)
        raise BudgetExhausted(
            f"tolerance {mp.nstr(tol, 3)} is below the attainable accuracy "
            f"{mp.nstr(floor, 3)} at {mp.dps} digits",
            partial,
        )
    while heap and total > tol:
        neg_err, jid, lo, hi, val, noise = heapq.heappop(heap)
        err = -neg_err
        g, jlo, jhi = jobs[jid]
        if err <= noise or hi - lo < (jhi - jlo) * mp.eps * 64:
            done.append((jid, lo, val, err))
            continue
        if panels + 2 > max_panels:
            heapq.heappush(heap, (neg_err, jid, lo, hi, val, noise))
            break
        mid = (lo + hi) / 2
        for plo, phi in ((lo, mid), (mid, hi)):
            v, e, n = _panel_rule(g, plo, phi, GL_ORDER)
            panels += 1
            heapq.heappush(heap, (-e, jid, plo, phi, v, n))
        total = mp.fsum([-e[0] for e in heap] + [d[3] for d in done])
    done.extend((jid, lo, val, -ne) for ne, jid, lo, hi, val, noise in heap)
    done.sort(key=lambda d: (d[0], d[1]))

    value = mp.fsum(d[2] for d in done)
    err = mp.fsum(d[3] for d in done) + ulp(value) * len(done)
    result = QuadratureResult(ExtReal(value, err), err, panels, hints)
    if err > tol:
        if panels + 2 > max_panels:
            raise BudgetExhausted(
                f"panel budget {max_panels} exhausted before reaching tol={mp.nstr(tol, 3)}", result
            )
        raise BudgetExhausted(
            f"tolerance {mp.nstr(tol, 3)} is below the attainable accuracy "
            f"{mp.nstr(err, 3)} at {mp.dps} digits",
            result,
        )
    return result


def gauss_moments(weight: Callable, a, b, jmax: int, dps: int | None = None):
    """Moments  int_a^b t**j weight(t) dt  for j = 0..jmax at ``dps`` digits.

    ``weight`` must be analytic on a neighbourhood of [a, b].  The rule size
    is doubled until two successive rules agree to the requested precision;
    the returned error is that agreement gap.
    """
    dps = dps or mp.dps
    with mp.workdps(dps + 10):
        a, b = mp.mpf(a), mp.mpf(b)
        target = mp.mpf(10) ** -(dps + 2)
        m = max(32, jmax // 2 + 24)
        prev = None
        while True:
            cur = _moments_once(weight, a, b, jmax, m, dps)
            if prev is not None:
                gap = max(abs(c - p) for c, p in zip(cur, prev))
                scale = max(max(abs(c) for c in cur), mp.mpf(1) if jmax == 0 else abs(cur[0]))
                if gap <= target * max(scale, 1):
                    break
                if m > 4096:
                    raise BudgetExhausted("moment rule did not converge")
            prev = cur
            m *= 2
        gap = max(gap, ulp(scale))
    with mp.workdps(dps):
        return [ExtReal(+c, gap) for c in cur]


def _moments_once(weight, a, b, jmax, m, dps):
    xs, ws = gauss_legendre(m, dps + 10)
    half = (b - a) / 2
    mid = (a + b) / 2
    sums = [[] for _ in range(jmax + 1)]
    for x, w in zip(xs, ws):
        t = mid + half * x
        y = w * weight(t)
        if not mp.isfinite(y):
            raise NonFiniteSample(t)
        p = y
        for j in range(jmax + 1):
            sums[j].append(p)
            p *= t
    return [mp.fsum(s) * half for s in sums]
