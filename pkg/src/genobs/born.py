"""Probability maps for frames, effect families and POVMs, plus a sampler."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import rng
from .errors import DegenerateDenominator, DimMismatch, InvalidDistribution
from .linalg import DEFAULT_TOL, as_vector, fro
from .observables import EffectFamily, ObliqueFrame, Povm
from .states import DensityOperator, GeneralizedState, as_state

NORMALIZATION_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Probabilities over outcome labels, in the observable's declared order."""

    labels: tuple
    probs: np.ndarray

    @classmethod
    def from_raw(cls, labels, raw, tol: float = DEFAULT_TOL) -> "OutcomeDistribution":
        """Check ``raw`` lies in ``[-tol, 1 + tol]`` and sums to one, then clamp.

        Round-off excursions within ``tol`` are clipped to ``[0, 1]`` and the
        vector renormalized; anything larger raises
        :class:`InvalidDistribution`.
        """
        p = np.asarray(raw, dtype=float)
        if p.shape != (len(labels),):
            raise InvalidDistribution(f"{p.size} probabilities for {len(labels)} labels")
        if not np.all(np.isfinite(p)) or p.min() < -tol or p.max() > 1 + tol:
            raise InvalidDistribution(f"probabilities outside [0, 1]: {p}")
        if abs(p.sum() - 1) > NORMALIZATION_TOL:
            raise InvalidDistribution(f"probabilities sum to {p.sum()!r}")
        if p.min() < 0 or p.max() > 1:
            p = np.clip(p, 0.0, 1.0)
            p = p / p.sum()
        p.setflags(write=False)
        return cls(tuple(labels), p)

    def __getitem__(self, label) -> float:
        return float(self.probs[self.labels.index(str(label))])

    def as_dict(self) -> dict[str, float]:
        return {lab: float(p) for lab, p in zip(self.labels, self.probs)}


def _traces(rho: np.ndarray, ops) -> np.ndarray:
    # Tr(rho A) = sum_ab rho_ab A_ba; real for Hermitian pairs
    return np.array([np.einsum("ab,ba->", rho, A).real for A in ops])


def _check_dims(E: EffectFamily, rho: GeneralizedState):
    if E.dim != rho.dim:
        raise DimMismatch(f"observable acts in dimension {E.dim}, state in {rho.dim}")


def prob_coeff(frame: ObliqueFrame, psi) -> OutcomeDistribution:
    """``|c_j|^2 / sum_k |c_k|^2`` for the expansion of ``psi`` in the frame."""
    c = frame.coefficients(as_vector(psi, "psi"))
    w = np.abs(c) ** 2
    return OutcomeDistribution.from_raw(frame.labels, w / w.sum())


def denominator(E: EffectFamily, rho) -> float:
    """``Tr(rho E(X))``, positive for every valid pair."""
    rho = as_state(rho)
    _check_dims(E, rho)
    den = float(_traces(rho.op, [E.total])[0])
    if den <= 1e-14 * fro(rho.op) * fro(E.total):
        raise DegenerateDenominator(f"Tr(rho E(X)) = {den!r} is not positive")
    return den


def prob_effects(E: EffectFamily, rho) -> OutcomeDistribution:
    """``Tr(rho E_j) / Tr(rho E(X))`` with no pre-normalization of ``rho``."""
    rho = as_state(rho)
    den = denominator(E, rho)
    return OutcomeDistribution.from_raw(E.labels, _traces(rho.op, E.effects) / den)


def prob_povm(W: Povm, rho) -> OutcomeDistribution:
    """``Tr(rho W_j)`` for a POVM and a density operator."""
    if not isinstance(rho, DensityOperator):
        rho = DensityOperator(rho.op if isinstance(rho, GeneralizedState) else rho)
    _check_dims(W, rho)
    return OutcomeDistribution.from_raw(W.labels, _traces(rho.op, W.effects))


def event_probability(E: EffectFamily, rho, event: Iterable) -> float:
    """Probability that the outcome lies in ``event`` (a set of labels)."""
    rho = as_state(rho)
    num = float(_traces(rho.op, [E.event(event)])[0])
    return num / denominator(E, rho)


def sample_outcomes(E: EffectFamily, rho, n: int, seed: int) -> dict[str, int]:
    """Draw ``n`` i.i.d. outcomes and return counts per label.

    Each uniform ``u`` from :func:`genobs.rng.uniforms` selects the label
    whose half-open interval ``[F_{j-1}, F_j)`` of the cumulative
    distribution contains it, labels taken in declared order.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    probs = prob_effects(E, rho).probs
    counts = np.zeros(len(probs), dtype=np.int64)
    if n:
        cdf = np.cumsum(probs)
        idx = np.searchsorted(cdf, rng.uniforms(seed, n), side="right")
        # u beyond the rounded cdf end goes to the last label with mass
        idx[idx >= len(probs)] = int(np.flatnonzero(probs > 0)[-1])
        counts = np.bincount(idx, minlength=len(probs))
    return {lab: int(c) for lab, c in zip(E.labels, counts)}
