"""Clamped polynomial basis on [0, 1] and its exact derivative Gram matrices.

Basis: phi_j(x) = x^l (1-x)^l P_j(2x-1), j = 0..N-1, with P_j the Legendre
polynomial. Every phi_j and its first l-1 derivatives vanish at both ends, so
the clamped conditions of order l hold exactly.

The shifted Legendre polynomials have integer monomial coefficients, so all
Gram entries are rationals with denominator dividing lcm(1..2D-1) (D = number
of monomial coefficients). They are computed in integer arithmetic and rounded
to float once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

__all__ = ["GramSet", "clamped_basis_grams", "shifted_legendre", "basis_coefficients"]


def shifted_legendre(j: int) -> list[int]:
    """Monomial coefficients (ascending) of P_j(2x - 1)."""
    return [(-1) ** (j + k) * comb(j, k) * comb(j + k, k) for k in range(j + 1)]


def _mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _deriv(a: list[int]) -> list[int]:
    return [i * a[i] for i in range(1, len(a))] or [0]


def basis_coefficients(l: int, N: int) -> list[list[int]]:
    """Monomial coefficients of phi_0..phi_{N-1}."""
    bubble = [1]
    for _ in range(l):
        bubble = _mul(bubble, [0, 1])
        bubble = _mul(bubble, [1, -1])
    return [_mul(bubble, shifted_legendre(j)) for j in range(N)]


def _exact_gram(left: list[list[int]], right: list[list[int]], D: int) -> np.ndarray:
    """Float matrix of integral_0^1 p_i q_j dx, rounded once from the exact rational."""
    L = math.lcm(*range(1, 2 * D))
    pad = lambda p: p + [0] * (D - len(p))
    A = np.array([pad(p) for p in left], dtype=object)
    B = np.array([pad(q) for q in right], dtype=object)
    H = np.array([[L // (a + b + 1) for b in range(D)] for a in range(D)], dtype=object)
    G = A.dot(H).dot(B.T)
    N = len(left)
    out = np.empty((N, len(right)))
    for i in range(N):
        for j in range(len(right)):
            out[i, j] = float(Fraction(int(G[i, j]), L))
    return out


@dataclass(frozen=True)
class GramSet:
    """Derivative Gram matrices of the clamped basis.

    ``grams[r][i, j] = integral phi_i^(r) phi_j^(r)`` for r = 0..l and
    ``mixed[i, j] = integral phi_i'' phi_j``.
    """

    l: int
    basis_size: int
    grams: dict
    mixed: np.ndarray

    def __getitem__(self, r: int) -> np.ndarray:
        return self.grams[r]

    @property
    def mass(self) -> np.ndarray:
        return self.grams[0]

    @property
    def stiffness(self) -> np.ndarray:
        return self.grams[self.l]

    def truncated(self, N: int) -> "GramSet":
        """Grams of the first N basis functions (the basis is nested in N)."""
        if N > self.basis_size:
            raise ValueError(f"cannot truncate {self.basis_size} functions to {N}")
        return GramSet(self.l, N, {r: g[:N, :N] for r, g in self.grams.items()}, self.mixed[:N, :N])


@lru_cache(maxsize=32)
def _grams_cached(l: int, N: int) -> GramSet:
    phis = basis_coefficients(l, N)
    D = len(phis[-1])
    grams = {}
    cur = phis
    for r in range(l + 1):
        g = _exact_gram(cur, cur, D)
        g = np.triu(g) + np.triu(g, 1).T  # bit-exact symmetry
        g.setflags(write=False)
        grams[r] = g
        if r == 0:
            second = [_deriv(_deriv(p)) for p in phis]
        cur = [_deriv(p) for p in cur]
    mixed = _exact_gram(second, phis, D)
    mixed.setflags(write=False)
    return GramSet(l, N, grams, mixed)


def clamped_basis_grams(l: int, N: int) -> GramSet:
    if l < 1 or N < 1:
        raise ValueError(f"need l >= 1 and N >= 1, got l={l}, N={N}")
    return _grams_cached(int(l), int(N))
