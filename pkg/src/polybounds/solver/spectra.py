"""Reference spectra for clamped polyharmonic and buckling problems."""
from __future__ import annotations

import logging
from math import comb
from typing import Optional

import numpy as np

from ..core import Domain, ProblemKind, ProblemSpec, Source, SourceKind, Spectrum
from ..lemmas import MomentSequence
from .bessel import clamped_disk_roots
from .eig import EigResult, NotPositiveDefiniteError, cholesky_lower, gen_sym_eig
from .galerkin import GramSet, clamped_basis_grams

__all__ = [
    "ConvergenceError",
    "default_basis_size",
    "interval_polyharmonic_eig",
    "interval_polyharmonic_spectrum",
    "interval_buckling_eig",
    "interval_buckling_spectrum",
    "rectangle_spectrum",
    "disk_clamped_plate_spectrum",
    "sphere_closed_spectrum",
    "sphere_multiplicity",
    "eigenfunction_moments",
]

log = logging.getLogger(__name__)

SWEEP_STEP = 10
SWEEP_RTOL = 1e-9


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, first_bad: Optional[int] = None):
        super().__init__(message)
        self.first_bad = first_bad


def default_basis_size(l: int) -> int:
    return 30 + 10 * l


def _guard_mass(g: GramSet) -> None:
    try:
        cholesky_lower(g.mass, "mass matrix G0")
    except NotPositiveDefiniteError as e:
        raise ConvergenceError(
            f"basis size {g.basis_size} too large for double precision at l={g.l}: {e}"
        ) from e


def _converged_prefix(coarse: np.ndarray, fine: np.ndarray, rtol: float) -> int:
    rel = np.abs(coarse - fine) / np.abs(fine)
    bad = np.flatnonzero(rel > rtol)
    return int(bad[0]) if bad.size else len(coarse)


def _sweep(solve, N: int, count: int, step: int, rtol: float, what: str) -> np.ndarray:
    """Solve at N and N + step; keep the leading entries that agree to ``rtol``."""
    coarse = solve(N, count)
    fine = solve(N + step, count)
    keep = _converged_prefix(coarse, fine, rtol)
    if keep == 0:
        raise ConvergenceError(
            f"{what}: eigenvalue 1 not converged between N={N} and N={N + step}", first_bad=1
        )
    if keep < count:
        log.warning("%s: trimming count %d -> %d (eigenvalue %d not converged)", what, count, keep, keep + 1)
    return coarse[:keep]


def interval_polyharmonic_eig(l: int, N: int, count: Optional[int] = None) -> tuple[EigResult, GramSet]:
    """Galerkin pencil G^(l) v = lam G^(0) v on the clamped basis of size N."""
    g = clamped_basis_grams(l, N)
    _guard_mass(g)
    return gen_sym_eig(g.stiffness, g.mass, count or N, via="stiffness"), g


def interval_polyharmonic_spectrum(
    l: int,
    N: Optional[int] = None,
    count: int = 5,
    *,
    sweep_step: int = SWEEP_STEP,
    sweep_rtol: float = SWEEP_RTOL,
) -> Spectrum:
    """(-d^2/dx^2)^l u = lam u on [0, 1] with u, ..., u^(l-1) zero at both ends."""
    N = default_basis_size(l) if N is None else N
    if not 1 <= count <= N:
        raise ValueError(f"count must be in [1, N={N}], got {count}")
    vals = _sweep(
        lambda M, c: interval_polyharmonic_eig(l, M, c)[0].values,
        N, count, sweep_step, sweep_rtol, f"interval l={l}",
    )
    return Spectrum(
        ProblemSpec(ProblemKind.DIRICHLET_POLYHARMONIC, l, 1, Domain.interval()),
        tuple(vals),
        Source(SourceKind.GALERKIN, N),
    )


def interval_buckling_eig(l: int, N: int, count: Optional[int] = None) -> tuple[EigResult, GramSet]:
    """Pencil G^(l) v = Lam G^(1) v for (-d^2/dx^2)^l u = -Lam u''."""
    if l < 2:
        raise ValueError("buckling problems need l >= 2")
    g = clamped_basis_grams(l, N)
    _guard_mass(g)
    return gen_sym_eig(g.stiffness, g[1], count or N, via="stiffness"), g


def interval_buckling_spectrum(
    l: int = 2,
    N: Optional[int] = None,
    count: int = 3,
    *,
    sweep_step: int = SWEEP_STEP,
    sweep_rtol: float = SWEEP_RTOL,
) -> Spectrum:
    """Buckling (l = 2) or generalized buckling (l > 2) eigenvalues on [0, 1]."""
    N = default_basis_size(l) if N is None else N
    if not 1 <= count <= N:
        raise ValueError(f"count must be in [1, N={N}], got {count}")
    vals = _sweep(
        lambda M, c: interval_buckling_eig(l, M, c)[0].values,
        N, count, sweep_step, sweep_rtol, f"interval buckling l={l}",
    )
    kind = ProblemKind.BUCKLING if l == 2 else ProblemKind.GENERALIZED_BUCKLING
    return Spectrum(ProblemSpec(kind, l, 1, Domain.interval()), tuple(vals), Source(SourceKind.GALERKIN, N))


def _rectangle_matrices(l: int, width: float, height: float, N: int) -> tuple[np.ndarray, np.ndarray]:
    g = clamped_basis_grams(l, N)
    _guard_mass(g)
    a, b = float(width), float(height)
    G0, G1 = g[0], g[1]
    # u(x, y) = sum v_ij phi_i(x/a) phi_j(y/b); the common factor a*b is dropped
    mass = np.kron(G0, G0)
    if l == 1:
        stiff = np.kron(G1, G0) / a**2 + np.kron(G0, G1) / b**2
    elif l == 2:
        C = g.mixed
        cross = (np.kron(C, C.T) + np.kron(C.T, C)) / 2
        stiff = np.kron(g[2], G0) / a**4 + np.kron(G0, g[2]) / b**4 + 2 * cross / (a**2 * b**2)
    else:
        raise ValueError(f"rectangle spectra support l in {{1, 2}}, got {l}")
    return (stiff + stiff.T) / 2, mass


def _rectangle_values(l, width, height, N, count):
    stiff, mass = _rectangle_matrices(l, width, height, N)
    return gen_sym_eig(stiff, mass, count, via="stiffness").values


def rectangle_spectrum(
    l: int,
    width: float = 1.0,
    height: float = 1.0,
    N: int = 20,
    count: int = 6,
    *,
    sweep_step: int = 5,
    sweep_rtol: Optional[float] = None,
) -> Spectrum:
    """Clamped Laplacian (l = 1) or clamped plate (l = 2) on [0, width] x [0, height].

    Tensor-product Galerkin with N clamped functions per axis. ``sweep_rtol``
    defaults to 1e-9 for l = 1 and 1e-7 for l = 2.
    """
    if width <= 0 or height <= 0:
        raise ValueError("rectangle sides must be positive")
    if not 1 <= count <= N * N:
        raise ValueError(f"count must be in [1, {N * N}], got {count}")
    rtol = sweep_rtol if sweep_rtol is not None else (1e-9 if l == 1 else 1e-7)
    vals = _sweep(
        lambda M, c: _rectangle_values(l, width, height, M, c),
        N, count, sweep_step, rtol, f"rectangle l={l}",
    )
    return Spectrum(
        ProblemSpec(ProblemKind.DIRICHLET_POLYHARMONIC, l, 2, Domain.rectangle(width, height)),
        tuple(vals),
        Source(SourceKind.GALERKIN, N),
    )


def disk_clamped_plate_spectrum(count: int = 6, m_max: int = 12) -> Spectrum:
    """Clamped plate on the unit disk: lam = k^4 over the roots of J_m I_m' - I_m J_m'."""
    roots = clamped_disk_roots(count, m_max)
    vals = tuple(k**4 for k, _ in roots)
    return Spectrum(
        ProblemSpec(ProblemKind.DIRICHLET_POLYHARMONIC, 2, 2, Domain.disk()),
        vals,
        Source(SourceKind.BESSEL_ROOTS),
    )


def sphere_multiplicity(n: int, m: int) -> int:
    """Dimension of degree-m spherical harmonics on S^n."""
    if m == 0:
        return 1
    if m == 1:
        return n + 1
    return comb(n + m, n) - comb(n + m - 2, n)


def sphere_closed_spectrum(n: int, l: int, count: int) -> Spectrum:
    """(-Laplacian)^l on the closed unit S^n: (m(m+n-1))^l with harmonic multiplicities."""
    if n < 1 or l < 1 or count < 1:
        raise ValueError("need n, l, count >= 1")
    vals: list[float] = []
    m = 0
    while len(vals) < count:
        vals.extend([float((m * (m + n - 1)) ** l)] * sphere_multiplicity(n, m))
        m += 1
    return Spectrum(
        ProblemSpec(ProblemKind.DIRICHLET_POLYHARMONIC, l, n, Domain.sphere()),
        tuple(vals[:count]),
        Source(SourceKind.ANALYTIC),
    )


def eigenfunction_moments(e: EigResult, g: GramSet, index: int, l: int) -> MomentSequence:
    """mu_k = v^T G^(k) v for k = 0..l, v the index-th (0-based) eigenvector.

    Under clamped conditions integral (u^(k))^2 = integral u (-d^2/dx^2)^k u,
    so these are the moments of the Galerkin eigenfunction.
    """
    if l > g.l:
        raise ValueError(f"GramSet only has derivatives up to order {g.l}")
    v = e.vectors[:, index]
    v = v / np.sqrt(v @ g.mass @ v)
    return MomentSequence(tuple(float(v @ g[k] @ v) for k in range(l + 1)))
