"""Bessel J_m, I_m by ascending series, and clamped circular plate roots.

The J series alternates and its terms reach about e^x in size before they
decay, so the sums are carried out in mpmath with enough guard digits to absorb
that cancellation. Only integer orders and arguments up to ~40 are intended.
"""
from __future__ import annotations

import math
from typing import Optional

import mpmath

__all__ = [
    "SERIES_TAIL",
    "RootCountError",
    "bessel_series",
    "bessel_j",
    "bessel_i",
    "clamped_disk_char",
    "clamped_disk_roots",
]

# tail bound: absolute for J (|J_m| <= 1), relative for I
SERIES_TAIL = 1e-17
_MAX_TERMS = 10_000


class RootCountError(RuntimeError):
    """Not enough roots found, or higher angular modes could still contribute."""


def _dps(x: float) -> int:
    return 20 + int(math.ceil(abs(x) / math.log(10))) + 5


def bessel_series(m: int, x, modified: bool):
    """(f, f') for f = J_m(x) (``modified=False``) or I_m(x) (``modified=True``), as mpf.

    Sum of t_j = (+-1)^j (x/2)^{2j+m} / (j! (j+m)!), stopped once the geometric
    tail bound |t_j| r/(1-r) with r = (x/2)^2/((j+1)(j+m+1)) <= 1/2 drops
    below SERIES_TAIL (times |I_m| for the modified function).
    """
    if m < 0:
        raise ValueError("order must be non-negative")
    x = mpmath.mpf(x)
    if x <= 0:
        raise ValueError("argument must be positive")
    h2 = (x / 2) ** 2
    sgn = 1 if modified else -1
    t = (x / 2) ** m / mpmath.factorial(m)
    f = mpmath.mpf(0)
    df = mpmath.mpf(0)
    for j in range(_MAX_TERMS):
        f += t
        df += t * (2 * j + m)
        r = h2 / ((j + 1) * (j + m + 1))
        if r <= 0.5:
            tail = abs(t) * r / (1 - r)
            scale = abs(f) if modified else 1
            if tail <= SERIES_TAIL * scale:
                break
        t = sgn * t * r
    else:
        raise ArithmeticError(f"series for order {m} at x={x} did not converge")
    return f, df / x


def bessel_j(m: int, x: float) -> float:
    with mpmath.workdps(_dps(x)):
        return float(bessel_series(m, x, modified=False)[0])


def bessel_i(m: int, x: float) -> float:
    with mpmath.workdps(_dps(x)):
        return float(bessel_series(m, x, modified=True)[0])


def clamped_disk_char(m: int, k: float) -> float:
    """(J_m(k) I_m'(k) - I_m(k) J_m'(k)) / I_m(k); zero exactly at clamped-plate wavenumbers."""
    with mpmath.workdps(_dps(k)):
        J, dJ = bessel_series(m, k, modified=False)
        I, dI = bessel_series(m, k, modified=True)
        return float((J * dI - I * dJ) / I)


def _bisect(m: int, lo: float, hi: float, flo: float, xtol: float) -> float:
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fm = clamped_disk_char(m, mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _mode_roots(m: int, k_cap: float, step: float, xtol: float, limit: Optional[int] = None) -> list[float]:
    roots = []
    a = step
    fa = clamped_disk_char(m, a)
    n_steps = int(math.floor(k_cap / step + 1e-9))
    for i in range(2, n_steps + 1):
        b = i * step
        fb = clamped_disk_char(m, b)
        if fa == 0:
            roots.append(a)
        elif (fa < 0) != (fb < 0) and fb != 0:
            roots.append(_bisect(m, a, b, fa, xtol))
        if limit is not None and len(roots) >= limit:
            break
        a, fa = b, fb
    return roots


def clamped_disk_roots(
    count: int,
    m_max: int = 12,
    *,
    k_max: float = 40.0,
    step: float = 0.1,
    xtol: float = 1e-12,
) -> list[tuple[float, int]]:
    """Smallest wavenumbers k (with angular order m) of the clamped unit disk.

    Each m >= 1 root appears twice (cosine and sine modes). Returns exactly
    ``count`` entries sorted by k. Raises RootCountError when the roots up to
    ``k_max`` are exhausted or when mode ``m_max + 1`` could still hold one of
    the requested roots.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    k_cap = min(10.0, k_max)
    while True:
        found: list[tuple[float, int]] = []
        for m in range(m_max + 1):
            rs = _mode_roots(m, k_cap, step, xtol)
            if not rs:
                break  # first roots increase with m
            for r in rs:
                found.extend([(r, m)] * (1 if m == 0 else 2))
        found.sort()
        if len(found) >= count:
            break
        if k_cap >= k_max:
            raise RootCountError(f"only {len(found)} roots below k = {k_max} for m <= {m_max}; need {count}")
        k_cap = min(2 * k_cap, k_max)
    kept = found[:count]
    k_last = kept[-1][0]
    nxt = _mode_roots(m_max + 1, k_last + step, step, xtol, limit=1)
    if nxt and nxt[0] <= k_last:
        raise RootCountError(
            f"angular order {m_max + 1} has a root k = {nxt[0]:.6g} <= {k_last:.6g}; increase m_max"
        )
    return kept
