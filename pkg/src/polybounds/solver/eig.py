"""Dense generalized symmetric-definite eigensolver (Cholesky reduction)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as sla
from scipy.linalg import lapack

__all__ = ["EigResult", "gen_sym_eig", "NotPositiveDefiniteError", "EigenConvergenceError", "cholesky_lower"]


class NotPositiveDefiniteError(np.linalg.LinAlgError):
    def __init__(self, which: str, pivot: int):
        super().__init__(f"{which} is not positive definite: leading minor of order {pivot} fails")
        self.which = which
        self.pivot = pivot


class EigenConvergenceError(np.linalg.LinAlgError):
    pass


@dataclass(frozen=True)
class EigResult:
    """Smallest eigenpairs of A v = lam B v; columns of ``vectors`` are B-orthonormal."""

    values: np.ndarray
    vectors: np.ndarray
    residual_norms: np.ndarray
    tol: float

    @property
    def flagged(self) -> np.ndarray:
        """Indices whose backward error exceeds ``tol``."""
        return np.flatnonzero(self.residual_norms > self.tol)


def cholesky_lower(M: np.ndarray, which: str = "B") -> np.ndarray:
    c, info = lapack.dpotrf(np.asarray(M, dtype=float), lower=1, clean=1)
    if info > 0:
        raise NotPositiveDefiniteError(which, int(info))
    if info < 0:
        raise ValueError(f"dpotrf: illegal argument {-info}")
    return c


def _reduce(L: np.ndarray, M: np.ndarray) -> np.ndarray:
    X = sla.solve_triangular(L, M, lower=True)
    C = sla.solve_triangular(L, X.T, lower=True)
    return (C + C.T) / 2


def gen_sym_eig(
    A: np.ndarray,
    B: np.ndarray,
    count: Optional[int] = None,
    *,
    via: str = "mass",
    tol: float = 1e-10,
) -> EigResult:
    """Smallest ``count`` eigenpairs of the symmetric-definite pencil (A, B).

    ``via="mass"`` factors B = L L^T and diagonalizes L^{-1} A L^{-T}.
    ``via="stiffness"`` (A must also be positive definite) factors A instead and
    takes the largest eigenvalues mu of the reciprocal pencil (B, A), lam = 1/mu.
    The second route keeps relative accuracy for the low end of the spectrum
    when A has a huge spread of eigenvalues, as Galerkin stiffness matrices do
    for high-order operators.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise ValueError(f"A and B must be square and equal-sized, got {A.shape} and {B.shape}")
    size = A.shape[0]
    count = size if count is None else int(count)
    if not 1 <= count <= size:
        raise ValueError(f"count must be in [1, {size}], got {count}")

    LB = cholesky_lower(B, "B")
    try:
        if via == "mass":
            w, y = sla.eigh(_reduce(LB, A), subset_by_index=[0, count - 1])
            vecs = sla.solve_triangular(LB.T, y, lower=False)
        elif via == "stiffness":
            LA = cholesky_lower(A, "A")
            mu, y = sla.eigh(_reduce(LA, B), subset_by_index=[size - count, size - 1])
            mu, y = mu[::-1], y[:, ::-1]
            if np.any(mu <= 0):
                raise EigenConvergenceError("reciprocal pencil produced non-positive eigenvalues")
            w = 1.0 / mu
            vecs = sla.solve_triangular(LA.T, y, lower=False)
        else:
            raise ValueError(f"via must be 'mass' or 'stiffness', got {via!r}")
    except np.linalg.LinAlgError as e:
        if isinstance(e, (NotPositiveDefiniteError, EigenConvergenceError)):
            raise
        raise EigenConvergenceError(f"symmetric eigensolver failed: {e}") from e

    norms = np.sqrt(np.einsum("ij,ij->j", vecs, B @ vecs))
    vecs = vecs / norms
    nA, nB = np.linalg.norm(A, 1), np.linalg.norm(B, 1)
    R = A @ vecs - (B @ vecs) * w
    res = np.linalg.norm(R, axis=0) / ((nA + np.abs(w) * nB) * np.linalg.norm(vecs, axis=0))
    return EigResult(values=w, vectors=vecs, residual_norms=res, tol=tol)
