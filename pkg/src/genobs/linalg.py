"""Dense complex linear algebra used by every other module.

Operators are plain ``numpy`` complex arrays of shape ``(d, d)`` and state
vectors are 1-d complex arrays. All checks take an explicit relative
tolerance measured against ``max(1, ||A||_F)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimMismatch,
    NonFinite,
    NotHermitian,
    NotSquare,
    SingularFrame,
    ZeroVector,
)

DEFAULT_TOL = 1e-10
MAX_CONDITION = 1e8
ZERO_NORM = 1e-12


def as_matrix(A, name: str = "matrix") -> np.ndarray:
    """Coerce ``A`` to a square, finite complex128 array (a copy)."""
    try:
        M = np.array(A, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise NotSquare(f"{name} is not a numeric square matrix: {exc}") from None
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise NotSquare(f"{name} must be a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NonFinite(f"{name} has NaN or infinite entries")
    return M


def as_vector(v, name: str = "vector") -> np.ndarray:
    """Coerce ``v`` to a finite, nonzero 1-d complex128 array (a copy)."""
    try:
        x = np.array(v, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise DimMismatch(f"{name} is not a numeric vector: {exc}") from None
    if x.ndim != 1 or x.size == 0:
        raise DimMismatch(f"{name} must be a non-empty 1-d vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NonFinite(f"{name} has NaN or infinite entries")
    if np.linalg.norm(x) <= ZERO_NORM:
        raise ZeroVector(f"{name} has norm <= {ZERO_NORM:g}")
    return x


def frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def fro(A: np.ndarray) -> float:
    return float(np.linalg.norm(A))


def adjoint(A) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(A).conj().T


def trace(A) -> complex:
    return complex(np.trace(as_matrix(A)))


def hs_inner(A, B) -> complex:
    """Hilbert-Schmidt pairing ``Tr(A* B)``."""
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape != B.shape:
        raise DimMismatch(f"dims differ: {A.shape[0]} vs {B.shape[0]}")
    return complex(np.vdot(A, B))


def _scale(A: np.ndarray) -> float:
    return max(1.0, fro(A))


def is_hermitian(A, tol: float = DEFAULT_TOL) -> bool:
    A = as_matrix(A)
    return fro(A - A.conj().T) <= tol * _scale(A)


def hermitian_part(A) -> np.ndarray:
    A = as_matrix(A)
    return (A + A.conj().T) / 2


def is_psd(A, tol: float = DEFAULT_TOL) -> bool:
    """True iff the smallest eigenvalue is at least ``-tol * max(1, ||A||_F)``.

    Raises
    ------
    NotHermitian
        If ``A`` fails :func:`is_hermitian` at the same tolerance.
    """
    A = as_matrix(A)
    if not is_hermitian(A, tol):
        raise NotHermitian("PSD test requires a Hermitian operator")
    lam_min = np.linalg.eigvalsh(hermitian_part(A))[0]
    return bool(lam_min >= -tol * _scale(A))


def min_eigenvalue(A) -> float:
    """Smallest eigenvalue of the Hermitian part of ``A``."""
    return float(np.linalg.eigvalsh(hermitian_part(A))[0])


@dataclass(frozen=True)
class HermitianEigensystem:
    """Ascending eigenvalues and matching orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def vectors(self) -> list[np.ndarray]:
        return [self.eigenvectors[:, k] for k in range(self.eigenvectors.shape[1])]

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T

    def residual(self, A) -> float:
        """Relative reconstruction error ``||A - V diag(lam) V*||_F / max(1, ||A||_F)``."""
        A = as_matrix(A)
        return fro(A - self.reconstruct()) / _scale(A)


def eig_hermitian(A, tol: float = DEFAULT_TOL) -> HermitianEigensystem:
    A = as_matrix(A)
    if not is_hermitian(A, tol):
        raise NotHermitian("eigendecomposition requires a Hermitian operator")
    lam, V = np.linalg.eigh(hermitian_part(A))
    return HermitianEigensystem(frozen(lam), frozen(V))


def frame_matrix(vectors: Sequence, dim: int | None = None) -> np.ndarray:
    """Stack ``vectors`` as the columns of a square matrix.

    Raises :class:`SingularFrame` when the matrix is not square or its
    condition number exceeds ``MAX_CONDITION``.
    """
    cols = [as_vector(v, f"frame vector {k}") for k, v in enumerate(vectors)]
    if not cols:
        raise SingularFrame("frame is empty")
    d = cols[0].size
    if any(c.size != d for c in cols):
        raise DimMismatch("frame vectors have different lengths")
    if dim is not None and d != dim:
        raise DimMismatch(f"frame vectors have length {d}, expected {dim}")
    if len(cols) != d:
        raise SingularFrame(f"frame has {len(cols)} vectors in dimension {d}; a basis needs {d}")
    F = np.column_stack(cols)
    cond = np.linalg.cond(F)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularFrame(f"frame is numerically dependent (condition number {cond:.3g} > {MAX_CONDITION:g})")
    return F


def expand_in_frame(vectors: Sequence, psi) -> np.ndarray:
    """Coefficients ``c`` with ``psi = sum_j c_j e_j`` for a basis ``{e_j}``."""
    F = frame_matrix(vectors)
    psi = as_vector(psi, "psi")
    if psi.size != F.shape[0]:
        raise DimMismatch(f"psi has length {psi.size}, frame dimension is {F.shape[0]}")
    return np.linalg.solve(F, psi)
