"""Polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .numerics import mp


class RationalPoly:
    """a_0 + a_1 t + ... + a_d t**d with Fraction coefficients (immutable)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPoly is immutable")

    @classmethod
    def monomial(cls, k: int, c=1) -> "RationalPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, RationalPoly):
            other = RationalPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __call__(self, t):
        """Horner evaluation; exact for Fraction/int input, mpf otherwise."""
        if isinstance(t, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * t + c
            return acc
        acc = mp.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * t + mp.mpf(c.numerator) / c.denominator
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def derivative_at(self, j: int, point) -> Fraction:
        return derivative_at(self, j, point)

    def integral_01(self) -> Fraction:
        """Exact integral over [0, 1]."""
        return sum((c / (i + 1) for i, c in enumerate(self.coeffs)), Fraction(0))

    def integral(self, a, b) -> Fraction:
        a, b = Fraction(a), Fraction(b)
        return sum((c * (b ** (i + 1) - a ** (i + 1)) / (i + 1) for i, c in enumerate(self.coeffs)), Fraction(0))

    def __repr__(self):
        if not self.coeffs:
            return "RationalPoly(0)"
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c]
        return "RationalPoly(" + " + ".join(terms) + ")"

    def to_strings(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "RationalPoly":
        return cls(Fraction(s) for s in items)


def _lift(v) -> RationalPoly:
    return v if isinstance(v, RationalPoly) else RationalPoly([v])


def derivative_at(P: RationalPoly, j: int, point) -> Fraction:
    """Exact j-th derivative of P at 0 or 1 (or any rational point)."""
    if j < 0:
        raise ValueError("derivative order must be nonnegative")
    point = Fraction(point)
    if point == 0:
        return factorial(j) * P.coeff(j)
    if point == 1:
        return sum(
            (P.coeffs[m] * (factorial(m) // factorial(m - j)) for m in range(j, len(P.coeffs))),
            Fraction(0),
        )
    return sum(
        (P.coeffs[m] * (factorial(m) // factorial(m - j)) * point ** (m - j) for m in range(j, len(P.coeffs))),
        Fraction(0),
    )


def binomial_power(k: int) -> RationalPoly:
    """(1 - t)**k expanded."""
    return RationalPoly((-1) ** i * comb(k, i) for i in range(k + 1))
