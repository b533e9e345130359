"""Rational-coefficient approximation of real numbers by special values.

Pipeline for one target: build a smooth f_alpha whose weighted integral
against the basis kernel is alpha, approximate it by a polynomial with
rational coefficients, multiply by the weight t**(2k0) (1-t)**(2k0), read
off exact coefficients for the basis, then evaluate the basis and report
the residual.

Kernels and bases:

    multicos  tan(pi t) on [0, x]        log C_{k+1}(x) / pi
    multisin  cot(pi t / 2) on [0, x]    log S_{k+1}(x / 2) / pi
    zetaBeta  log cos(pi t / 4) on [0,1] beta(2k+2)/pi**(2k+1), eta(2k+1)/pi**(2k), log 2
    lupuWu    cot(pi t / 2) on [0, 1]    zeta(2k+1) / pi**(2k+1)
"""
from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .dirichlet import beta_fn, eta, zeta
from .moments import sine_moments, t_cot_half, tan_moments
from .multifun import SINE_INDEX_SHIFT
from .numerics import WORKING_DPS, ExtReal, NumericsError, integrate, log2, mp, pi, ulp
from .poly import RationalPoly, binomial_power, derivative_at

BASES = ("multicos", "zetaBeta", "multisin", "lupuWu")
PROFILES = ("constant", "bump")

# Readings of the polynomial log-cosine closed form, tested in identities.py.
LOG2_READINGS = ("integral", "endpoint")
ETA_READINGS = ("resolved", "plain", "flip-one", "alt-zero")
_ETA_SIGNS = {
    # (P^(2k-1)(1) part negated?, P^(2k-1)(0) part carries (-1)**k?)
    "plain": (False, False),
    "flip-one": (True, False),
    "alt-zero": (False, True),
    "resolved": (True, True),
}


class ApproximationError(NumericsError):
    """A pipeline stage failed; ``stage`` names it."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


class PreconditionError(ApproximationError, ValueError):
    pass


class UnresolvedIndex(ApproximationError):
    pass


# ---------------------------------------------------------------------------
# targets


def evaluate_alpha(expr, dps: int | None = None):
    """Evaluate a real target given as a decimal or a small arithmetic expression.

    Allowed names: pi, e, log2, catalan; functions sqrt, log, exp, zeta.
    """
    if not isinstance(expr, str):
        expr = str(expr)
    with mp.workdps((dps or mp.dps) + 5):
        tree = ast.parse(expr.strip(), mode="eval")
        val = _eval_node(tree.body)
    with mp.workdps(dps or mp.dps):
        return +val


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_NAMES = {"pi": lambda: mp.pi, "e": lambda: mp.e, "log2": lambda: mp.ln2, "catalan": lambda: mp.catalan}
_FUNCS = {"sqrt": lambda v: mp.sqrt(v), "log": lambda v: mp.log(v), "exp": lambda v: mp.exp(v),
          "zeta": lambda v: mp.zeta(v)}


def _eval_node(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        # re-read the literal text so decimals are not rounded through binary floats
        return mp.mpf(repr(node.value)) if isinstance(node.value, float) else mp.mpf(node.value)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]()
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS \
            and len(node.args) == 1 and not node.keywords:
        return _FUNCS[node.func.id](_eval_node(node.args[0]))
    raise ValueError(f"unsupported expression: {ast.dump(node)}")


@dataclass(frozen=True)
class ApproxTarget:
    alpha: str
    basis: str
    x: Fraction | None
    k0: int
    q: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", str(self.alpha).strip())
        if self.basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")
        if self.n < 3 or self.k0 < 1 or self.q < 1:
            raise ValueError("need n >= 3, k0 >= 1, q >= 1")
        if self.basis in ("zetaBeta", "lupuWu"):
            object.__setattr__(self, "x", None)
        else:
            if self.x is None:
                raise ValueError(f"basis {self.basis} needs an anchor x")
            x = Fraction(self.x)
            upper = Fraction(1, 2) if self.basis == "multicos" else Fraction(1)
            if not 0 <= x < upper:
                raise ValueError(f"x must lie in [0, {upper}) for basis {self.basis}")
            object.__setattr__(self, "x", x)
        evaluate_alpha(self.alpha)

    @property
    def domain_end(self) -> Fraction:
        return Fraction(1) if self.x is None else self.x

    def with_n(self, n: int) -> "ApproxTarget":
        return replace(self, n=n)


# ---------------------------------------------------------------------------
# weight and functionals


def weight_poly(k0: int) -> RationalPoly:
    """t**(2k0) (1 - t)**(2k0)."""
    if k0 < 1:
        raise ValueError("k0 must be positive")
    return RationalPoly.monomial(2 * k0) * binomial_power(2 * k0)


def _kernel(basis: str) -> Callable:
    """kernel(t) * t  for cot bases (the weight supplies the t), kernel(t) otherwise."""
    if basis == "multicos":
        return lambda t: mp.tan(mp.pi * t)
    if basis == "zetaBeta":
        return lambda t: mp.log(mp.cos(mp.pi * t / 4))
    if basis in ("multisin", "lupuWu"):
        return t_cot_half
    raise ValueError(f"unknown basis {basis!r}")


def _domain_end(basis, x) -> Fraction:
    if basis in ("zetaBeta", "lupuWu"):
        return Fraction(1)
    x = Fraction(x)
    upper = Fraction(1, 2) if basis == "multicos" else Fraction(1)
    if not 0 <= x < upper:
        raise ApproximationError("functional", f"x must lie in [0, {upper}) for basis {basis}")
    return x


def _is_zero_function(f) -> bool:
    z = getattr(f, "is_zero", False)
    return bool(z() if callable(z) else z)


def functional_value(f: Callable, basis: str, x, k0: int, tol=1e-20) -> ExtReal:
    """Integral of f(t) t**(2k0) (1-t)**(2k0) kernel(t) over the basis domain."""
    end = _domain_end(basis, x)
    if end == 0 or _is_zero_function(f):
        return ExtReal(0)
    kern = _kernel(basis)
    shift = 1 if basis in ("multisin", "lupuWu") else 0
    w = RationalPoly.monomial(2 * k0 - shift) * binomial_power(2 * k0)

    def integrand(t):
        return f(t) * w(t) * kern(t)

    pts = getattr(f, "breakpoints", lambda L: ())(end)
    L = mp.mpf(end.numerator) / end.denominator
    return integrate(integrand, 0, L, tol, points=pts).value


# ---------------------------------------------------------------------------
# smooth profiles


def _smoothstep(s):
    if s <= 0:
        return mp.mpf(0)
    if s >= 1:
        return mp.mpf(1)
    a = mp.exp(-1 / s)
    b = mp.exp(-1 / (1 - s))
    return a / (a + b)


class Profile:
    """Base shape g for f_alpha = scale * g."""

    kind = "constant"
    is_zero = False

    def __init__(self, domain_end, scale=1):
        self.domain_end = Fraction(domain_end)
        self.scale = mp.mpf(scale)
        self.is_zero = self.scale == 0

    def shape(self, t):
        return mp.mpf(1)

    def __call__(self, t):
        if self.is_zero:
            return mp.mpf(0)
        return self.scale * self.shape(t)

    def breakpoints(self, end):
        return ()

    def scaled(self, factor) -> "Profile":
        return type(self)(self.domain_end, self.scale * factor)


class BumpProfile(Profile):
    """Smooth plateau: 1 on |t - c| <= d, 0 outside |t - c| < 2d; c = L/2, d = L/8."""

    kind = "bump"

    def _geometry(self):
        L = mp.mpf(self.domain_end.numerator) / self.domain_end.denominator
        return L / 2, L / 8

    def shape(self, t):
        c, d = self._geometry()
        u = abs(t - c)
        if u <= d:
            return mp.mpf(1)
        if u >= 2 * d:
            return mp.mpf(0)
        return _smoothstep((2 * d - u) / d)

    def breakpoints(self, end):
        c, d = self._geometry()
        return (c - 2 * d, c - d, c + d, c + 2 * d)


def _profile(kind, end, scale=1) -> Profile:
    if kind == "constant":
        return Profile(end, scale)
    if kind == "bump":
        return BumpProfile(end, scale)
    raise ValueError(f"profile must be one of {PROFILES}")


def construct_f_alpha(alpha, basis: str, x, k0: int, profile: str = "constant") -> Profile:
    """A smooth f with functional_value(f) = alpha (to quadrature accuracy)."""
    end = _domain_end(basis, x)
    a = evaluate_alpha(alpha) if isinstance(alpha, str) else mp.mpf(alpha)
    if a == 0:
        return _profile(profile, end, 0)
    if a < 0:
        pos = construct_f_alpha(-a, basis, x, k0, profile)
        return pos.scaled(-1)
    g = _profile(profile, end)
    tg = functional_value(g, basis, x, k0)
    if abs(tg.value) <= tg.err:
        raise ApproximationError("construct_f_alpha", "functional of the base profile vanishes")
    return _profile(profile, end, a / tg.value)


# ---------------------------------------------------------------------------
# polynomial approximation


@dataclass(frozen=True)
class SmoothFit:
    poly: RationalPoly
    chebyshev: tuple
    error_estimate: float


def default_denominator(n: int, q: int) -> int:
    return 10 ** (q + 6) * n ** q


def _mpf_to_fraction(v) -> Fraction:
    v = mp.mpf(v)
    man, exp = v.man_exp
    # man_exp drops the sign
    man = -int(man) if v < 0 else int(man)
    return Fraction(man * 2 ** exp) if exp >= 0 else Fraction(man, 2 ** -exp)


@lru_cache(maxsize=16)
def _chebyshev_basis(L: Fraction, n: int) -> tuple:
    """T_j(2t/L - 1) as exact polynomials in t, j = 0..n."""
    u = RationalPoly([-1, Fraction(2) / L])
    out = [RationalPoly([1]), u]
    for _ in range(2, n + 1):
        out.append(2 * u * out[-1] - out[-2])
    return tuple(out[: n + 1])


def chebyshev_fit(f: Callable, domain_end, n: int, denom_bound: int) -> SmoothFit:
    """Interpolate f at n+1 Chebyshev points of [0, L] and round to rationals."""
    L = Fraction(domain_end)
    if L <= 0:
        raise ApproximationError("approximate_smooth", "domain end must be positive")
    if _is_zero_function(f):
        return SmoothFit(RationalPoly(), (), 0.0)
    Lm = mp.mpf(L.numerator) / L.denominator
    m = n + 1
    thetas = [mp.pi * (j + mp.mpf(1) / 2) / m for j in range(m)]
    vals = [f(Lm * (1 + mp.cos(th)) / 2) for th in thetas]
    cheb = []
    for k in range(m):
        c = mp.fsum(v * mp.cos(k * th) for v, th in zip(vals, thetas)) * 2 / m
        cheb.append(c / 2 if k == 0 else c)
    rounded = [_mpf_to_fraction(c).limit_denominator(denom_bound) for c in cheb]
    basis = _chebyshev_basis(L, n)
    poly = RationalPoly()
    for c, T in zip(rounded, basis):
        if c:
            poly = poly + c * T
    rounding = sum(abs(float(c) - float(r)) for c, r in zip(cheb, rounded))
    tail = float(abs(cheb[-1]) + (abs(cheb[-2]) if m > 1 else 0))
    return SmoothFit(poly, tuple(rounded), tail + rounding)


def approximate_smooth(f: Callable, domain_end, n: int, q: int, denom_bound: int | None = None,
                       target_error: float | None = None) -> RationalPoly:
    """Polynomial of degree <= n with rational coefficients close to f on [0, domain_end].

    Chebyshev interpolation followed by rounding every Chebyshev coefficient
    to the nearest rational with denominator <= denom_bound (default
    10**(q+6) * n**q).  With ``target_error`` set, raises when the estimated
    sup-norm error exceeds it.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    fit = chebyshev_fit(f, domain_end, n, denom_bound or default_denominator(max(n, 1), q))
    if target_error is not None and fit.error_estimate > target_error:
        raise ApproximationError(
            "approximate_smooth",
            f"estimated error {fit.error_estimate:.3e} exceeds requested {target_error:.3e} at degree {n}",
        )
    return fit.poly


def build_Pn(s: RationalPoly, k0: int) -> RationalPoly:
    """t**(2k0) (1-t)**(2k0) s(t), with the endpoint vanishing asserted exactly."""
    P = weight_poly(k0) * s
    if not s.is_zero():
        for j in range(2 * k0):
            if derivative_at(P, j, 0) != 0 or derivative_at(P, j, 1) != 0:
                raise AssertionError("weighted polynomial fails to vanish at an endpoint")
    return P


# ---------------------------------------------------------------------------
# coefficient formulas


def tan_basis_coefficients(P: RationalPoly) -> list[tuple[int, Fraction]]:
    """c_k = -a_k, paired with log C_{k+1}(x) / pi."""
    if P.is_zero():
        return []
    return [(k, -P.coeff(k)) for k in range(P.valuation, P.degree + 1)]


@dataclass(frozen=True)
class CosLogCoefficients:
    beta: list          # (k, c) paired with beta(2k+2) / pi**(2k+1)
    eta: list           # (k, c) paired with eta(2k+1) / pi**(2k)
    log2: Fraction      # paired with log 2


def _require_vanishing_at_zero(P: RationalPoly, stage: str):
    if P.coeff(0) != 0:
        raise PreconditionError(stage, "polynomial must vanish at t = 0")


def cos_log_coefficients(P: RationalPoly, log2_reading: str = "integral",
                      eta_reading: str = "resolved") -> CosLogCoefficients:
    """Coefficients of  int_0^1 P(t) log cos(pi t / 4) dt  over beta, eta and log 2."""
    _require_vanishing_at_zero(P, "cos_log_coefficients")
    if log2_reading not in LOG2_READINGS or eta_reading not in _ETA_SIGNS:
        raise ValueError("unknown reading")
    if P.is_zero():
        return CosLogCoefficients([], [], Fraction(0))
    n = P.degree
    beta = [(k, (-1) ** k * derivative_at(P, 2 * k, 1) * 2 ** (2 * k + 1)) for k in range(n // 2 + 1)]
    flip_one, alt_zero = _ETA_SIGNS[eta_reading]
    eta_c = []
    for k in range(1, (n + 1) // 2 + 1):
        one = Fraction((-1) ** k, 2) * derivative_at(P, 2 * k - 1, 1)
        zero = derivative_at(P, 2 * k - 1, 0) * 2 ** (2 * k)
        if flip_one:
            one = -one
        if alt_zero:
            zero = (-1) ** k * zero
        eta_c.append((k, one + zero))
    if log2_reading == "integral":
        l2 = -P.integral_01()
    else:
        l2 = -P(Fraction(1)) / (n + 1)
    return CosLogCoefficients(beta, eta_c, l2)


def sine_basis_coefficients(P: RationalPoly, index_shift: int | None = None) -> list[tuple[int, Fraction]]:
    """c_k = 2**(k + shift) a_k, paired with log S_{k+1}(x/2) / pi.

    shift 0 gives the factor 2**k; the verified shift is SINE_INDEX_SHIFT.
    """
    shift = SINE_INDEX_SHIFT if index_shift is None else index_shift
    if shift not in (0, 1):
        raise UnresolvedIndex("sine_basis_coefficients", f"index shift {shift!r} is not a resolved reading")
    if P.is_zero():
        return []
    return [(k, 2 ** (k + shift) * P.coeff(k)) for k in range(P.valuation, P.degree + 1)]


@dataclass(frozen=True)
class CotCoefficients:
    zeta: list          # (k, c) paired with zeta(2k+1) / pi**(2k+1)
    log2: Fraction      # paired with log 2 / pi


def cot_zeta_coefficients(P: RationalPoly) -> CotCoefficients:
    """c_k = (-1)**k 2 [P^(2k)(1) (1 - 4**-k) + P^(2k)(0)]."""
    _require_vanishing_at_zero(P, "cot_zeta_coefficients")
    if P.is_zero():
        return CotCoefficients([], Fraction(0))
    n = P.degree
    out = []
    for k in range(1, n // 2 + 1):
        c = (-1) ** k * 2 * (derivative_at(P, 2 * k, 1) * (1 - Fraction(1, 4 ** k)) + derivative_at(P, 2 * k, 0))
        if out or c:
            out.append((k, c))
    return CotCoefficients(out, 2 * P(Fraction(1)))


# ---------------------------------------------------------------------------
# closed-form assemblies


def _ext_pi_powers(top: int):
    p = pi()
    pe = ExtReal(p, ulp(p))
    out = [ExtReal(1)]
    for _ in range(top):
        out.append(out[-1] * pe)
    return out


def cos_log_assembly(P: RationalPoly, log2_reading: str = "integral", eta_reading: str = "resolved") -> ExtReal:
    """Closed-form value of int_0^1 P(t) log cos(pi t / 4) dt (P(0) = 0)."""
    co = cos_log_coefficients(P, log2_reading, eta_reading)
    if P.is_zero():
        return ExtReal(0)
    pw = _ext_pi_powers(P.degree + 2)
    total = ExtReal(log2(), ulp(log2())) * co.log2
    for k, c in co.beta:
        if c:
            total = total + beta_fn(2 * k + 2).val * c / pw[2 * k + 1]
    for k, c in co.eta:
        if c:
            total = total + eta(2 * k + 1).val * c / pw[2 * k]
    return total


def cot_assembly(P: RationalPoly) -> ExtReal:
    """Closed-form value of int_0^1 P(t) cot(pi t / 2) dt (P(0) = 0)."""
    co = cot_zeta_coefficients(P)
    if P.is_zero():
        return ExtReal(0)
    pw = _ext_pi_powers(P.degree + 2)
    total = ExtReal(log2(), ulp(log2())) * co.log2 / pw[1]
    for k, c in co.zeta:
        if c:
            total = total + zeta(2 * k + 1).val * c / pw[2 * k + 1]
    return total


def poly_functional(P: RationalPoly, basis: str, x=None, tol=1e-25) -> ExtReal:
    """Direct quadrature of int P(t) kernel(t) dt over the basis domain."""
    end = _domain_end(basis, x if x is not None else 1)
    if P.is_zero() or end == 0:
        return ExtReal(0)
    kern = _kernel(basis)
    if basis in ("multisin", "lupuWu"):
        if P.coeff(0) != 0:
            raise PreconditionError("poly_functional", "cot kernel needs P(0) = 0")
        Q = RationalPoly(P.coeffs[1:])
    else:
        Q = P
    L = mp.mpf(end.numerator) / end.denominator
    return integrate(lambda t: Q(t) * kern(t), 0, L, tol).value


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class CoefficientEntry:
    k: int
    c: Fraction
    element: str


@dataclass
class ApproxCertificate:
    target: ApproxTarget
    profile: str
    denom_bound: int
    weighted_poly: RationalPoly
    coefficients: list
    basis_values: list
    residual: object
    residual_err: object
    fitted_k: float
    ladder: dict
    dps: int
    passed: bool
    fit_error_estimate: float = 0.0
    claimed_bound_form: str = "K/n^q with fitted K"
    resolutions: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)


def current_resolutions() -> dict:
    return {
        "sine_index_shift": SINE_INDEX_SHIFT,
        "cos_log_log2_term": "integral",
        "cos_log_eta_signs": "resolved",
    }


def _log10_abs(c: Fraction) -> float:
    if c == 0:
        return -math.inf
    return math.log10(abs(c.numerator)) - math.log10(c.denominator)


def _element_log10_bound(basis: str, k: int, x, kind: str = "") -> float:
    if basis == "multicos":
        xf = float(x)
        return (k + 1) * math.log10(xf) + math.log10(math.tan(math.pi * xf) + 1e-300) if xf > 0 else -math.inf
    if basis == "multisin":
        yf = float(x) / 2
        return k * math.log10(yf) if yf > 0 else -math.inf
    if basis == "lupuWu":
        return math.log10(2) - (2 * k + 1) * math.log10(math.pi)
    if kind == "beta":
        return -(2 * k + 1) * math.log10(math.pi)
    if kind == "eta":
        return -(2 * k) * math.log10(math.pi)
    return 0.0


def _coefficient_entries(target: ApproxTarget, P: RationalPoly) -> list[CoefficientEntry]:
    b, x = target.basis, target.x
    if b == "multicos":
        return [CoefficientEntry(k, c, f"logC({k + 1},{x})/pi") for k, c in tan_basis_coefficients(P)]
    if b == "multisin":
        return [CoefficientEntry(k, c, f"logS({k + 1},{x / 2})/pi") for k, c in sine_basis_coefficients(P)]
    if b == "lupuWu":
        co = cot_zeta_coefficients(P)
        out = [CoefficientEntry(k, c, f"zeta({2 * k + 1})/pi^{2 * k + 1}") for k, c in co.zeta if c]
        if co.log2:
            out.append(CoefficientEntry(0, co.log2, "log(2)/pi"))
        return out
    co = cos_log_coefficients(P)
    out = [CoefficientEntry(k, c, f"beta({2 * k + 2})/pi^{2 * k + 1}") for k, c in co.beta if c]
    out += [CoefficientEntry(k, c, f"eta({2 * k + 1})/pi^{2 * k}") for k, c in co.eta if c]
    if co.log2:
        out.append(CoefficientEntry(0, co.log2, "log(2)"))
    return out


def _working_digits(target: ApproxTarget, entries) -> int:
    top = 0.0
    for e in entries:
        kind = e.element.split("(")[0]
        top = max(top, _log10_abs(e.c) + _element_log10_bound(target.basis, e.k, target.x, kind))
    digits = WORKING_DPS + int(math.ceil(max(top, 0))) + 10
    return -(-digits // 20) * 20


def basis_values(target: ApproxTarget, entries, dps: int) -> list[ExtReal]:
    """Values of the basis elements named by ``entries`` at ``dps`` digits."""
    if not entries:
        return []
    with mp.workdps(dps):
        p = mp.pi
        b = target.basis
        if b == "multicos":
            kmax = max(e.k for e in entries)
            mom = tan_moments(_fr(target.x), kmax, dps)
            return [-mom[e.k] for e in entries]
        if b == "multisin":
            kmax = max(e.k for e in entries)
            mom = sine_moments(_fr(target.x) / 2, kmax, dps)
            return [mom[e.k - 1] for e in entries]
        out = []
        for e in entries:
            name = e.element
            if name.startswith("zeta("):
                s = 2 * e.k + 1
                out.append(zeta(s).val / ExtReal(p ** s, ulp(p ** s) * s))
            elif name.startswith("beta("):
                s = 2 * e.k + 2
                out.append(beta_fn(s).val / ExtReal(p ** (s - 1), ulp(p ** (s - 1)) * s))
            elif name.startswith("eta("):
                s = 2 * e.k + 1
                out.append(eta(s).val / ExtReal(p ** (s - 1), ulp(p ** (s - 1)) * s))
            elif name == "log(2)/pi":
                out.append(ExtReal(mp.ln2 / p, 4 * ulp(mp.ln2)))
            elif name == "log(2)":
                out.append(ExtReal(+mp.ln2, ulp(mp.ln2)))
            else:
                raise ValueError(f"unknown basis element {name}")
        return out


def _fr(v: Fraction):
    return mp.mpf(v.numerator) / v.denominator


def combine(alpha_value, entries, values, skip=()):
    """alpha - sum c_k * value_k, and the propagated error of the sum."""
    terms = []
    err = []
    for e, v in zip(entries, values):
        if e.element in skip:
            continue
        terms.append(v.value * e.c.numerator / e.c.denominator)
        err.append(v.err * abs(e.c.numerator) / e.c.denominator)
    s = mp.fsum(terms)
    return abs(alpha_value - s), mp.fsum(err) + len(terms) * ulp(max([abs(t) for t in terms] + [s]))


@lru_cache(maxsize=256)
def _pipeline(target: ApproxTarget, profile: str, denom_bound: int | None):
    D = denom_bound or default_denominator(target.n, target.q)
    f = construct_f_alpha(target.alpha, target.basis, target.domain_end if target.x is not None else 1,
                          target.k0, profile)
    try:
        fit = chebyshev_fit(f, target.domain_end, target.n, D)
    except NumericsError as exc:
        raise ApproximationError("approximate_smooth", str(exc)) from exc
    P = build_Pn(fit.poly, target.k0)
    entries = _coefficient_entries(target, P)
    dps = _working_digits(target, entries)
    try:
        values = basis_values(target, entries, dps)
    except NumericsError as exc:
        raise ApproximationError("basis_values", str(exc)) from exc
    with mp.workdps(dps):
        a = evaluate_alpha(target.alpha, dps)
        residual, rerr = combine(a, entries, values)
        extras = {}
        if target.basis == "zetaBeta":
            without, _ = combine(a, entries, values, skip=("log(2)",))
            extras["residual_without_log2"] = without
    return D, P, entries, values, residual, rerr, dps, fit.error_estimate, extras


def ladder_rungs(n: int) -> list[int]:
    return sorted({max(3, n // 4), max(3, n // 2)} - {n})


def certify(target: ApproxTarget, profile: str = "constant", denom_bound: int | None = None) -> ApproxCertificate:
    """Run the full pipeline for ``target`` and fit the n**-q constant on a ladder."""
    if profile not in PROFILES:
        raise ValueError(f"profile must be one of {PROFILES}")
    D, P, entries, values, residual, rerr, dps, fit_err, extras = _pipeline(target, profile, denom_bound)
    ladder = {}
    for m in ladder_rungs(target.n):
        ladder[m] = _pipeline(target.with_n(m), profile, None)[4]
    ladder[target.n] = residual
    q = target.q
    if len(ladder) > 1:
        fitted = max(float(ladder[m]) * m ** q for m in ladder if m != target.n)
    else:
        fitted = float(residual) * target.n ** q
    passed = bool(residual <= mp.mpf(fitted) / target.n ** q)
    return ApproxCertificate(
        target=target,
        profile=profile,
        denom_bound=D,
        weighted_poly=P,
        coefficients=entries,
        basis_values=values,
        residual=residual,
        residual_err=rerr,
        fitted_k=fitted,
        ladder=dict(sorted(ladder.items())),
        dps=dps,
        passed=passed,
        fit_error_estimate=fit_err,
        resolutions=current_resolutions(),
        extras=extras,
    )


def recompute_residual(cert: ApproxCertificate):
    """Residual rebuilt from the stored coefficients and basis values only."""
    with mp.workdps(cert.dps):
        a = evaluate_alpha(cert.target.alpha, cert.dps)
        return combine(a, cert.coefficients, cert.basis_values)[0]


@dataclass(frozen=True)
class CertificateAudit:
    coefficients_match: bool
    stored_gap: object
    fresh_gap: object | None
    tolerance: float
    passed: bool


def audit_certificate(cert: ApproxCertificate, fresh: bool = True, tol: float = 1e-20) -> CertificateAudit:
    """Re-derive a certificate's coefficients and residual.

    Coefficients are rebuilt exactly from the stored weighted polynomial.
    The residual is recomputed from the stored basis values and, with
    ``fresh``, from basis values evaluated again from scratch.
    """
    expected = _coefficient_entries(cert.target, cert.weighted_poly)
    match = [(e.k, e.c, e.element) for e in expected] == [(e.k, e.c, e.element) for e in cert.coefficients]
    stored_gap = abs(recompute_residual(cert) - cert.residual)
    fresh_gap = None
    if fresh:
        values = basis_values(cert.target, cert.coefficients, cert.dps)
        with mp.workdps(cert.dps):
            a = evaluate_alpha(cert.target.alpha, cert.dps)
            fresh_gap = abs(combine(a, cert.coefficients, values)[0] - cert.residual)
    ok = match and stored_gap <= tol and (fresh_gap is None or fresh_gap <= tol)
    return CertificateAudit(match, stored_gap, fresh_gap, tol, bool(ok))
