"""Observables: oblique frames, effect families, POVMs and PVMs.

An :class:`EffectFamily` is a finite list of PSD effects whose total is
positive definite but need not be the identity. A :class:`Povm` is the
special case with total ``I``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DimMismatch,
    DuplicateLabels,
    DuplicateValues,
    InvalidPartition,
    NotHermitian,
    NotNormalized,
    NotOrthonormal,
    NotPositiveDefinite,
    NotPSD,
    UnknownLabel,
)
from .linalg import (
    DEFAULT_TOL,
    as_matrix,
    as_vector,
    frame_matrix,
    frozen,
    fro,
    is_hermitian,
    is_psd,
    min_eigenvalue,
)


def _labels(labels, n: int) -> tuple[str, ...]:
    if labels is None:
        return tuple(str(k) for k in range(n))
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise DimMismatch(f"{len(labels)} labels given for {n} outcomes")
    if len(set(labels)) != n:
        raise DuplicateLabels(f"outcome labels must be distinct: {labels}")
    return labels


def _values(values, n: int) -> tuple[float, ...] | None:
    if values is None:
        return None
    values = tuple(float(y) for y in values)
    if len(values) != n:
        raise DimMismatch(f"{len(values)} values given for {n} outcomes")
    if not all(np.isfinite(values)):
        raise DuplicateValues("outcome values must be finite reals")
    if len(set(values)) != n:
        raise DuplicateValues(f"outcome values must be distinct (nondegenerate spectrum): {values}")
    return values


@dataclass(frozen=True, eq=False)
class EffectFamily:
    """Finite generalized observable ``{E_j}`` with positive definite total."""

    effects: tuple
    labels: tuple | None = None
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        mats = [as_matrix(E, f"effect {k}") for k, E in enumerate(self.effects)]
        if not mats:
            raise DimMismatch("an effect family needs at least one effect")
        d = mats[0].shape[0]
        if any(E.shape[0] != d for E in mats):
            raise DimMismatch("effects have different dimensions")
        labels = _labels(self.labels, len(mats))
        for lab, E in zip(labels, mats):
            if not is_hermitian(E, self.tol):
                raise NotHermitian(f"effect {lab!r} is not Hermitian")
            if not is_psd(E, self.tol):
                raise NotPSD(f"effect {lab!r} is not positive semidefinite")
        mats = [frozen((E + E.conj().T) / 2) for E in mats]
        total = sum(mats[1:], mats[0].copy())
        lam = min_eigenvalue(total)
        if lam <= self.tol * fro(total):
            raise NotPositiveDefinite(
                f"total effect is not positive definite (min eigenvalue {lam:.3g})"
            )
        object.__setattr__(self, "effects", tuple(mats))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_total", frozen(total))

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]

    @property
    def total(self) -> np.ndarray:
        """``E(X) = sum_j E_j``."""
        return self._total

    def __len__(self):
        return len(self.effects)

    def index(self, label) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise UnknownLabel(f"unknown outcome label {label!r}; known: {self.labels}") from None

    def event(self, labels: Iterable) -> np.ndarray:
        """``E(B)`` for a set of outcome labels (zero operator for the empty set)."""
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for k in sorted({self.index(lab) for lab in labels}):
            out += self.effects[k]
        return out

    def scaled(self, c: float) -> "EffectFamily":
        return EffectFamily(tuple(c * E for E in self.effects), self.labels, self.tol)


@dataclass(frozen=True, eq=False)
class Povm(EffectFamily):
    """Effect family whose total is the identity."""

    def __post_init__(self):
        super().__post_init__()
        err = fro(self.total - np.eye(self.dim))
        if err > self.tol:
            raise NotNormalized(f"POVM effects sum to I only within {err:.3g}")


def is_povm(E: EffectFamily, tol: float = DEFAULT_TOL) -> bool:
    return fro(E.total - np.eye(E.dim)) <= tol


@dataclass(frozen=True, eq=False)
class ObliqueFrame:
    """A basis of unit vectors, not necessarily orthogonal, with outcome labels."""

    vectors: tuple
    labels: tuple | None = None
    values: tuple | None = None
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        F = frame_matrix(self.vectors)
        norms = np.linalg.norm(F, axis=0)
        bad = np.flatnonzero(np.abs(norms**2 - 1) > self.tol)
        if bad.size:
            raise NotNormalized(f"frame vector {int(bad[0])} has norm {norms[bad[0]]:.17g}, expected 1")
        n = F.shape[1]
        object.__setattr__(self, "labels", _labels(self.labels, n))
        object.__setattr__(self, "values", _values(self.values, n))
        object.__setattr__(self, "vectors", tuple(frozen(F[:, k].copy()) for k in range(n)))
        object.__setattr__(self, "_matrix", frozen(F))

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """Frame vectors as columns."""
        return self._matrix

    def gram(self) -> np.ndarray:
        return self._matrix.conj().T @ self._matrix

    def dual(self) -> np.ndarray:
        """Biorthogonal dual vectors ``f_j`` as columns: ``<e_k, f_j> = delta_jk``."""
        F = self._matrix
        return np.linalg.solve(F.conj().T, np.eye(self.dim, dtype=np.complex128))

    def coefficients(self, psi) -> np.ndarray:
        psi = as_vector(psi, "psi")
        if psi.size != self.dim:
            raise DimMismatch(f"psi has length {psi.size}, frame dimension is {self.dim}")
        return np.linalg.solve(self._matrix, psi)


def frame_projectors(frame: ObliqueFrame) -> list[np.ndarray]:
    """Oblique projectors ``pi_j = e_j f_j*`` with ``pi_j psi = c_j(psi) e_j``."""
    D = frame.dual()
    return [np.outer(frame.vectors[j], D[:, j].conj()) for j in range(frame.dim)]


def frame_effects(frame: ObliqueFrame) -> EffectFamily:
    """Effects ``M_j = pi_j* pi_j``; they form a POVM only for orthonormal frames."""
    mats = [P.conj().T @ P for P in frame_projectors(frame)]
    return EffectFamily(tuple(mats), frame.labels)


@dataclass(frozen=True, eq=False)
class Pvm:
    """Nondegenerate self-adjoint observable ``a = sum_j y_j e_j e_j*``."""

    basis: tuple
    values: tuple
    labels: tuple | None = None
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        F = frame_matrix(self.basis)
        n = F.shape[1]
        err = fro(F.conj().T @ F - np.eye(n))
        if err > self.tol:
            raise NotOrthonormal(f"basis Gram matrix differs from I by {err:.3g}")
        if self.values is None:
            raise DimMismatch("a PVM needs one real value per basis vector")
        object.__setattr__(self, "values", _values(self.values, n))
        object.__setattr__(self, "labels", _labels(self.labels, n))
        object.__setattr__(self, "basis", tuple(frozen(F[:, k].copy()) for k in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def operator(self) -> np.ndarray:
        F = np.column_stack(self.basis)
        return (F * np.asarray(self.values)) @ F.conj().T

    def projectors(self) -> list[np.ndarray]:
        return [np.outer(e, e.conj()) for e in self.basis]

    def povm(self) -> Povm:
        return Povm(tuple(self.projectors()), self.labels)

    def as_frame(self) -> ObliqueFrame:
        return ObliqueFrame(self.basis, self.labels, self.values)


def pvm_from_orthonormal(basis: Sequence, values: Sequence[float], labels=None) -> Pvm:
    return Pvm(tuple(basis), tuple(values), labels)


def coarse_grain(E: EffectFamily, partition) -> EffectFamily:
    """Sum effects over the blocks of a partition of the outcome labels.

    ``partition`` is either a sequence of label collections (block labels are
    the members joined by ``"|"`` in declared order) or a mapping from new
    block label to member labels.
    """
    if isinstance(partition, Mapping):
        names = [str(k) for k in partition]
        blocks = [list(v) for v in partition.values()]
    else:
        blocks = [list(b) for b in partition]
        names = None
    seen: set[int] = set()
    idx_blocks = []
    for block in blocks:
        if not block:
            raise InvalidPartition("partition blocks must be nonempty")
        try:
            idx = sorted({E.index(lab) for lab in block})
        except UnknownLabel as exc:
            raise InvalidPartition(str(exc)) from None
        if seen.intersection(idx):
            raise InvalidPartition("partition blocks overlap")
        seen.update(idx)
        idx_blocks.append(idx)
    if len(seen) != len(E):
        missing = [E.labels[k] for k in range(len(E)) if k not in seen]
        raise InvalidPartition(f"partition does not cover labels {missing}")
    if names is None:
        names = ["|".join(E.labels[k] for k in idx) for idx in idx_blocks]
    mats = [sum((E.effects[k] for k in idx[1:]), E.effects[idx[0]].copy()) for idx in idx_blocks]
    return EffectFamily(tuple(mats), tuple(names), E.tol)
