"""Auxiliary inequalities used by the bounds, as executable checks.

Each ``*_holds`` function enforces the monotonicity hypotheses of its inequality
rather than sorting its input, so a caller passing unsorted data gets an error
instead of a silently different statement. The ``*_suite`` functions run seeded
randomized searches for counterexamples and return how many they found.
"""
from __future__ import annotations

import itertools
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "DEFAULT_SEED",
    "HypothesisError",
    "MomentSequence",
    "MomentViolation",
    "moment_check",
    "simplex_f",
    "simplex_f_min",
    "simplex_grid_min",
    "simplex_random_suite",
    "chebyshev_sum_holds",
    "reverse_chebyshev_holds",
    "rearrangement_min",
    "chebyshev_suite",
    "reverse_chebyshev_suite",
    "rearrangement_suite",
    "rearrangement_exhaustive",
]

DEFAULT_SEED = 20240607
_REL = 1e-12


class HypothesisError(ValueError):
    """Input violates a hypothesis of the inequality being checked."""


@dataclass(frozen=True)
class MomentSequence:
    """mu[k] = integral of u (-Laplacian)^k u for a normalized eigenfunction u; mu[0] = 1, mu[l] = lambda."""

    mu: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(float(x) for x in self.mu))

    @property
    def l(self) -> int:
        return len(self.mu) - 1

    @property
    def lam(self) -> float:
        return self.mu[-1]


@dataclass(frozen=True)
class MomentViolation:
    check: str  # "nonneg", "power-bound", "log-convex-power", "log-convex"
    k: int
    lhs: float
    rhs: float


def moment_check(ms: MomentSequence, l: int, rtol: float = 1e-9) -> list[MomentViolation]:
    """Check the moment inequalities for k = 1..l-1.

    * 0 <= mu_k <= lambda^{k/l}
    * mu_k^{k+1} <= mu_{k+1}^k
    * mu_k <= sqrt(mu_{k-1} mu_{k+1})

    A comparison ``a <= b`` passes when ``a <= b * (1 + rtol)`` (or ``a >= -rtol * b``
    for the sign check).
    """
    if len(ms.mu) != l + 1:
        raise ValueError(f"need l + 1 = {l + 1} moments, got {len(ms.mu)}")
    mu, lam = ms.mu, ms.lam
    out = []
    for k in range(1, l):
        if mu[k] < -rtol * max(lam ** (k / l), 1.0):
            out.append(MomentViolation("nonneg", k, mu[k], 0.0))
        bound = lam ** (k / l) if lam > 0 else 0.0
        if mu[k] > bound * (1 + rtol):
            out.append(MomentViolation("power-bound", k, mu[k], bound))
        lhs, rhs = max(mu[k], 0.0) ** (k + 1), max(mu[k + 1], 0.0) ** k
        if lhs > rhs * (1 + (k + 1) * rtol):
            out.append(MomentViolation("log-convex-power", k, lhs, rhs))
        gm = math.sqrt(max(mu[k - 1], 0.0) * max(mu[k + 1], 0.0))
        if mu[k] > gm * (1 + rtol):
            out.append(MomentViolation("log-convex", k, mu[k], gm))
    return out


# --- simplex minimisation ----------------------------------------------------


def _on_simplex(z: np.ndarray, atol: float = 1e-12) -> bool:
    return z.ndim == 1 and z.size >= 1 and bool(np.all(z >= -atol)) and abs(float(z.sum()) - 1.0) <= atol


def simplex_f(z: Sequence[float]) -> float:
    """sum z_i^2 / (1 + 4 z_i) on the closed standard simplex."""
    z = np.asarray(z, dtype=float)
    if not _on_simplex(z):
        raise HypothesisError("z must be non-negative and sum to 1 (within 1e-12)")
    return float(np.sum(z * z / (1 + 4 * z)))


def simplex_f_min(n: int) -> float:
    return 1.0 / (n + 4)


def _f_rows(z: np.ndarray) -> np.ndarray:
    return np.sum(z * z / (1 + 4 * z), axis=-1)


def simplex_grid_min(n: int, step: float = 1e-3) -> tuple[float, np.ndarray]:
    """Minimum of simplex_f over the grid {z : z_i in step*Z, sum z = 1}; returns (min, argmin)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = int(round(1 / step))
    if n == 1:
        return simplex_f([1.0]), np.array([1.0])
    best, arg = math.inf, None
    # iterate over all but the last two coordinates; the last pair is a vector
    for head in itertools.product(range(m + 1), repeat=n - 2):
        rest = m - sum(head)
        if rest < 0:
            continue
        a = np.arange(rest + 1)
        grid = np.empty((a.size, n))
        grid[:, : n - 2] = np.array(head, dtype=float) / m
        grid[:, n - 2] = a / m
        grid[:, n - 1] = (rest - a) / m
        vals = _f_rows(grid)
        j = int(np.argmin(vals))
        if vals[j] < best:
            best, arg = float(vals[j]), grid[j].copy()
    return best, arg


def simplex_random_suite(n: int, trials: int = 10_000, seed: int = DEFAULT_SEED) -> int:
    """Count samples z ~ Dirichlet(1) with f(z) < 1/(n+4) - 1e-12."""
    rng = np.random.default_rng(seed)
    z = rng.dirichlet(np.ones(n), size=trials)
    return int(np.sum(_f_rows(z) < simplex_f_min(n) - 1e-12))


# --- Chebyshev-type sums -----------------------------------------------------


def _monotone(x: np.ndarray, increasing: bool) -> bool:
    d = np.diff(x)
    return bool(np.all(d >= 0)) if increasing else bool(np.all(d <= 0))


def _leq(lhs: float, rhs: float) -> bool:
    # the absolute floor covers products that underflow into subnormals
    return lhs <= rhs + _REL * max(abs(lhs), abs(rhs)) + sys.float_info.min


def chebyshev_sum_holds(a, b, c) -> bool:
    """(sum a^2 b)(sum a c) <= (sum a^2)(sum a b c) for a nonincreasing, b and c nondecreasing, all >= 0."""
    a, b, c = (np.asarray(x, dtype=float) for x in (a, b, c))
    if not (a.shape == b.shape == c.shape) or a.ndim != 1 or a.size == 0:
        raise HypothesisError("a, b, c must be non-empty sequences of equal length")
    if np.any(a < 0) or np.any(b < 0) or np.any(c < 0):
        raise HypothesisError("entries must be non-negative")
    if not _monotone(a, False):
        raise HypothesisError("a must be nonincreasing")
    if not (_monotone(b, True) and _monotone(c, True)):
        raise HypothesisError("b and c must be nondecreasing")
    lhs = float(np.sum(a * a * b) * np.sum(a * c))
    rhs = float(np.sum(a * a) * np.sum(a * b * c))
    return _leq(lhs, rhs)


def reverse_chebyshev_holds(a, b) -> bool:
    """sum a_i b_i <= (1/m)(sum a)(sum b) for a nondecreasing, b nonincreasing."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1 or a.size == 0:
        raise HypothesisError("a and b must be non-empty sequences of equal length")
    if not _monotone(a, True) or not _monotone(b, False):
        raise HypothesisError("a must be nondecreasing and b nonincreasing")
    lhs = float(np.sum(a * b))
    rhs = float(np.sum(a) * np.sum(b) / a.size)
    return _leq(lhs, rhs)


def rearrangement_min(c, d, perm: Sequence[int]) -> bool:
    """sum_k c_k d_{perm(k)} >= sum_k c_k d_{l+1-k}, for nondecreasing c, d.

    ``perm`` is 0-based: a permutation of range(len(c)).
    """
    c, d = np.asarray(c, dtype=float), np.asarray(d, dtype=float)
    perm = list(perm)
    if c.shape != d.shape or c.ndim != 1:
        raise HypothesisError("c and d must be sequences of equal length")
    if sorted(perm) != list(range(c.size)):
        raise HypothesisError(f"not a permutation of 0..{c.size - 1}: {perm}")
    if not (_monotone(c, True) and _monotone(d, True)):
        raise HypothesisError("c and d must be nondecreasing")
    lhs = float(np.dot(c, d[perm]))
    rhs = float(np.dot(c, d[::-1]))
    return _leq(rhs, lhs)


def rearrangement_exhaustive(c, d) -> tuple[float, tuple[int, ...]]:
    """Brute-force minimum of sum c_k d_{perm(k)} over all permutations."""
    c, d = np.asarray(c, dtype=float), np.asarray(d, dtype=float)
    best, arg = math.inf, None
    for p in itertools.permutations(range(c.size)):
        v = float(np.dot(c, d[list(p)]))
        if v < best:
            best, arg = v, p
    return best, arg


def _sorted_rows(rng, trials, m, descending=False, scale=10.0):
    x = np.sort(rng.random((trials, m)) * scale, axis=1)
    return x[:, ::-1] if descending else x


def chebyshev_suite(trials: int = 100_000, seed: int = DEFAULT_SEED, max_len: int = 8) -> int:
    rng = np.random.default_rng(seed)
    bad = 0
    for m in range(1, max_len + 1):
        t = trials // max_len + (1 if m <= trials % max_len else 0)
        a = _sorted_rows(rng, t, m, descending=True)
        b = _sorted_rows(rng, t, m)
        c = _sorted_rows(rng, t, m)
        lhs = np.sum(a * a * b, 1) * np.sum(a * c, 1)
        rhs = np.sum(a * a, 1) * np.sum(a * b * c, 1)
        bad += int(np.sum(lhs > rhs + _REL * np.maximum(np.abs(lhs), np.abs(rhs))))
    return bad


def reverse_chebyshev_suite(trials: int = 100_000, seed: int = DEFAULT_SEED, max_len: int = 8) -> int:
    rng = np.random.default_rng(seed)
    bad = 0
    for m in range(1, max_len + 1):
        t = trials // max_len + (1 if m <= trials % max_len else 0)
        # real sequences, not only non-negative ones
        a = np.sort(rng.normal(size=(t, m)), axis=1)
        b = np.sort(rng.normal(size=(t, m)), axis=1)[:, ::-1]
        lhs = np.sum(a * b, 1)
        rhs = np.sum(a, 1) * np.sum(b, 1) / m
        bad += int(np.sum(lhs > rhs + _REL * np.maximum(np.abs(lhs), np.abs(rhs)) + 1e-15))
    return bad


def rearrangement_suite(trials: int = 100_000, seed: int = DEFAULT_SEED, max_len: int = 8) -> int:
    rng = np.random.default_rng(seed)
    bad = 0
    for m in range(1, max_len + 1):
        t = trials // max_len + (1 if m <= trials % max_len else 0)
        c = np.sort(rng.normal(size=(t, m)), axis=1)
        d = np.sort(rng.normal(size=(t, m)), axis=1)
        perms = np.argsort(rng.random((t, m)), axis=1)
        lhs = np.sum(c * np.take_along_axis(d, perms, axis=1), 1)
        rhs = np.sum(c * d[:, ::-1], 1)
        bad += int(np.sum(rhs > lhs + _REL * np.maximum(np.abs(lhs), np.abs(rhs)) + 1e-15))
    return bad

