"""Generalized states: nonzero PSD operators with finite positive trace."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import rng
from .errors import InvalidState, NotHermitian, NotPSD
from .linalg import DEFAULT_TOL, ZERO_NORM, as_matrix, as_vector, frozen, fro, is_hermitian, is_psd


@dataclass(frozen=True, eq=False)
class GeneralizedState:
    """A nonnegative nonzero operator ``rho``; its trace need not be one.

    The stored operator is the Hermitian part of the input, read-only.
    """

    op: np.ndarray
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        A = as_matrix(self.op, "state")
        if not is_hermitian(A, self.tol):
            raise NotHermitian("state operator is not Hermitian")
        if not is_psd(A, self.tol):
            raise NotPSD("state operator has a negative eigenvalue")
        tr = np.trace(A)
        if abs(tr.imag) > self.tol * max(1.0, fro(A)):
            raise InvalidState(f"state trace is not real (imaginary part {tr.imag:.3g})")
        if tr.real <= ZERO_NORM:
            raise InvalidState(f"state trace {tr.real:.3g} is not strictly positive")
        object.__setattr__(self, "op", frozen((A + A.conj().T) / 2))

    @property
    def dim(self) -> int:
        return self.op.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.op).real)


@dataclass(frozen=True, eq=False)
class DensityOperator(GeneralizedState):
    """Generalized state with unit trace."""

    def __post_init__(self):
        super().__post_init__()
        if abs(self.trace - 1.0) > self.tol:
            raise InvalidState(f"density operator has trace {self.trace!r}, expected 1")


def as_state(rho) -> GeneralizedState:
    return rho if isinstance(rho, GeneralizedState) else GeneralizedState(rho)


def pure_state(psi) -> GeneralizedState:
    """``|psi><psi|`` for any nonzero ``psi``; the trace is ``||psi||^2``."""
    psi = as_vector(psi, "psi")
    return GeneralizedState(np.outer(psi, psi.conj()))


def normalize(rho) -> DensityOperator:
    rho = as_state(rho)
    return DensityOperator(rho.op / rho.trace)


def random_density(dim: int, seed: int, stream: int = 0) -> DensityOperator:
    """Ginibre density ``G G* / Tr(G G*)`` from the pinned generator."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    G = rng.complex_gaussian(rng.generator(seed, stream), (dim, dim))
    R = G @ G.conj().T
    return DensityOperator(R / np.trace(R).real)


def tomographic_frame(dim: int) -> list[DensityOperator]:
    """The ``dim**2`` pure states used for linear reconstruction.

    Order: ``|k><k|`` for each ``k``, then for each pair ``k < l`` the
    projectors onto ``(|k>+|l>)/sqrt2`` and ``(|k>+i|l>)/sqrt2``.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    eye = np.eye(dim, dtype=np.complex128)
    vecs = [eye[k] for k in range(dim)]
    for k in range(dim):
        for l in range(k + 1, dim):
            vecs.append((eye[k] + eye[l]) / np.sqrt(2))
            vecs.append((eye[k] + 1j * eye[l]) / np.sqrt(2))
    return [DensityOperator(np.outer(v, v.conj())) for v in vecs]
