"""Exact rational polynomials and the F_p / (B_q, C_q) recursions for sphere bounds.

All arithmetic is done with :class:`fractions.Fraction`; coefficients grow quickly
with the degree and any float drift would corrupt the absolute coefficients fed
into the sphere inequalities. Conversion to float happens only in
:func:`abs_lower_coeffs`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Union

__all__ = [
    "RationalPoly",
    "SphereCoefficients",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "f_poly",
    "bc_polys",
    "abs_lower_coeffs",
]

RationalLike = Union[int, Fraction, Rational]


def _canonical(coeffs: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class RationalPoly:
    """Dense polynomial, ``coeffs[i]`` multiplies ``t**i``; no trailing zeros."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _canonical(self.coeffs))

    @classmethod
    def t(cls) -> "RationalPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: RationalLike) -> "RationalPoly":
        return cls((c,))

    @property
    def degree(self) -> Union[int, float]:
        """Degree; the zero polynomial has degree ``-inf``."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return poly_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return poly_scale(self, other)
        if isinstance(other, RationalPoly):
            return poly_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            mag = abs(c)
            body = str(mag) if (mag != 1 or i == 0) else ""
            if body and mono:
                body += "*"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body + mono))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _lift(x):
    if isinstance(x, RationalPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalPoly.const(x)
    return NotImplemented


def poly_add(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    m = max(len(p.coeffs), len(q.coeffs))
    return RationalPoly(tuple(p[i] + q[i] for i in range(m)))


def poly_mul(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    if p.is_zero or q.is_zero:
        return RationalPoly()
    out = [Fraction(0)] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
    return RationalPoly(tuple(out))


def poly_scale(p: RationalPoly, r: RationalLike) -> RationalPoly:
    r = Fraction(r)
    return RationalPoly(tuple(c * r for c in p.coeffs))


@lru_cache(maxsize=None)
def f_poly(n: int, p: int) -> RationalPoly:
    """F_0 = 1, F_1 = t - n, F_p = (2t - 2) F_{p-1} - (t^2 + 2t - n(n-2)) F_{p-2}."""
    if n < 1 or p < 0:
        raise ValueError(f"need n >= 1 and p >= 0, got n={n}, p={p}")
    t = RationalPoly.t()
    prev, cur = RationalPoly.const(1), t - n
    if p == 0:
        return prev
    a = 2 * t - 2
    b = t * t + 2 * t - n * (n - 2)
    for _ in range(2, p + 1):
        prev, cur = cur, a * cur - b * prev
    if cur.degree != p or cur.leading != 1:
        raise ArithmeticError(f"F_{p} for n={n} is not monic of degree {p}: {cur}")
    return cur


@lru_cache(maxsize=None)
def bc_polys(n: int, q: int) -> tuple[RationalPoly, RationalPoly]:
    """The coupled pair (B_q, C_q).

    B_0 = 1, C_0 = 0, and for q >= 1
    ``B_q = (t - n) B_{q-1} - 4t C_{q-1}``, ``C_q = B_{q-1} + (t + n - 2) C_{q-1}``
    (which gives B_1 = t - n, C_1 = 1).
    """
    if n < 1 or q < 0:
        raise ValueError(f"need n >= 1 and q >= 0, got n={n}, q={q}")
    t = RationalPoly.t()
    B, C = RationalPoly.const(1), RationalPoly()
    for _ in range(q):
        B, C = (t - n) * B - 4 * t * C, B + (t + (n - 2)) * C
    return B, C


@dataclass(frozen=True)
class SphereCoefficients:
    """``abs_a[j] = |a_j|`` for the monic F_l = t^l + a_{l-1} t^{l-1} + ... + a_0.

    ``n`` and ``l`` record which polynomial the numbers came from so callers can
    check them against a spectrum.
    """

    abs_a: tuple[float, ...]
    n: int
    l: int

    def __post_init__(self):
        if len(self.abs_a) != self.l:
            raise ValueError(f"expected {self.l} coefficients, got {len(self.abs_a)}")
        if any(a < 0 for a in self.abs_a):
            raise ValueError("absolute coefficients must be non-negative")

    @classmethod
    def for_sphere(cls, n: int, l: int) -> "SphereCoefficients":
        return abs_lower_coeffs(f_poly(n, l), n=n)


def abs_lower_coeffs(p: RationalPoly, n: int = 0) -> SphereCoefficients:
    """|a_0|, ..., |a_{l-1}| of a monic polynomial of degree l >= 1, as floats."""
    if p.is_zero or p.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if p.leading != 1:
        raise ValueError(f"polynomial is not monic (leading coefficient {p.leading})")
    l = int(p.degree)
    return SphereCoefficients(tuple(float(abs(c)) for c in p.coeffs[:l]), n=n, l=l)
