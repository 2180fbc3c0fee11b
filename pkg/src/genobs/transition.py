"""Transition-probability matrices between observables.

Rows condition on the first observable's outcome: for PVMs ``A`` and ``B``,
``P[i, j] = |<e_i^A, e_j^B>|^2``. For an oblique frame ``A`` and a PVM
``B``, row ``i`` is the frame distribution in the ``i``-th eigenstate of
``B``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .born import prob_coeff
from .ensembles import haar_unitary
from .errors import DimMismatch, InvalidTransitionMatrix
from .linalg import DEFAULT_TOL
from .observables import ObliqueFrame, Pvm

ROW_TOL = 1e-10

__all__ = [
    "TransitionMatrix",
    "transition_matrix",
    "frame_transition",
    "is_doubly_stochastic",
    "haar_unitary",
]


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    entries: np.ndarray
    row_labels: tuple | None = None
    col_labels: tuple | None = None

    def __post_init__(self):
        P = np.array(self.entries, dtype=float)
        if P.ndim != 2 or P.shape[0] != P.shape[1] or P.size == 0:
            raise InvalidTransitionMatrix(f"transition matrix must be square, got shape {P.shape}")
        if not np.all(np.isfinite(P)) or P.min() < -ROW_TOL or P.max() > 1 + ROW_TOL:
            raise InvalidTransitionMatrix("entries must lie in [0, 1]")
        if np.max(np.abs(P.sum(axis=1) - 1)) > ROW_TOL:
            raise InvalidTransitionMatrix(f"rows must sum to 1, got {P.sum(axis=1)}")
        n = P.shape[0]
        rows = tuple(str(x) for x in self.row_labels) if self.row_labels else tuple(map(str, range(n)))
        cols = tuple(str(x) for x in self.col_labels) if self.col_labels else tuple(map(str, range(n)))
        P.setflags(write=False)
        object.__setattr__(self, "entries", P)
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)

    @property
    def row_sums(self) -> np.ndarray:
        return self.entries.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.entries.sum(axis=0)


def transition_matrix(A: Pvm, B: Pvm) -> TransitionMatrix:
    if A.dim != B.dim:
        raise DimMismatch(f"observables act in dimensions {A.dim} and {B.dim}")
    FA = np.column_stack(A.basis)
    FB = np.column_stack(B.basis)
    return TransitionMatrix(np.abs(FA.conj().T @ FB) ** 2, A.labels, B.labels)


def frame_transition(A: ObliqueFrame, B: Pvm) -> TransitionMatrix:
    """Row ``i``: outcome distribution of frame ``A`` in eigenstate ``e_i^B``."""
    if A.dim != B.dim:
        raise DimMismatch(f"observables act in dimensions {A.dim} and {B.dim}")
    rows = [prob_coeff(A, e).probs for e in B.basis]
    return TransitionMatrix(np.array(rows), B.labels, A.labels)


def is_doubly_stochastic(P: TransitionMatrix, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.max(np.abs(P.col_sums - 1)) <= tol)
