"""Deciding whether a generalized observable is secretly a POVM.

The map ``rho -> Tr(rho E_j) / Tr(rho E(X))`` on density operators is
reproduced by some POVM ``W`` exactly when it is affine. The decision is
constructive:

1. reconstruct the unique Hermitian candidates ``W_j`` that agree with the
   map on the tomographic frame states;
2. verify them, both by spot checks on probe and random states and by an
   exact algebraic identity (see :func:`verify_candidate`);
3. on failure, search for a pair of states whose midpoint breaks the
   midpoint-average identity, which certifies non-affinity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence

import numpy as np

from .born import prob_effects
from .errors import (
    IndeterminateVerdict,
    InternalInvariantError,
    NoWitnessFound,
    SingularReconstruction,
)
from .linalg import MAX_CONDITION, fro
from .observables import EffectFamily, Povm
from .states import random_density, tomographic_frame

PSD_TOL = 1e-9
VERIFY_TOL = 1e-9
AFFINITY_SIGNIFICANCE = 1e-6
AFFINITY_FLOOR = 1e-9
DEFAULT_TRIALS = 64

# disjoint stream ranges for the per-trial generators
_VERIFY_STREAM = 1 << 32
_WITNESS_STREAM = 2 << 32


def hermitian_basis(dim: int) -> list[np.ndarray]:
    """Hilbert-Schmidt orthonormal real basis of ``dim x dim`` Hermitian matrices."""
    basis = []
    for k in range(dim):
        B = np.zeros((dim, dim), dtype=np.complex128)
        B[k, k] = 1
        basis.append(B)
    for k in range(dim):
        for l in range(k + 1, dim):
            S = np.zeros((dim, dim), dtype=np.complex128)
            S[k, l] = S[l, k] = 1 / np.sqrt(2)
            A = np.zeros((dim, dim), dtype=np.complex128)
            A[k, l] = 1j / np.sqrt(2)
            A[l, k] = -1j / np.sqrt(2)
            basis.extend([S, A])
    return basis


def _first_max(x: np.ndarray) -> int:
    """Index of the first entry within round-off of the maximum."""
    return int(np.flatnonzero(x >= x.max() - 1e-12)[0])


def _coords(ops, basis) -> np.ndarray:
    """Real coordinates ``Tr(B_a X)`` of each ``X`` in ``ops`` (rows)."""
    Bs = np.array(basis)
    return np.einsum("aij,xji->xa", Bs, np.array(ops)).real


def _required(E: EffectFamily, states) -> np.ndarray:
    """``p_E(j | rho_m)`` as an ``(m, j)`` array."""
    return np.array([prob_effects(E, rho).probs for rho in states])


def reconstruct_candidate(E: EffectFamily) -> list[np.ndarray]:
    """Unique Hermitian ``W_j`` with ``Tr(rho_m W_j) = p_E(j | rho_m)`` on the frame.

    The frame is :func:`genobs.states.tomographic_frame`, which spans the
    Hermitian matrices, so the ``d^2 x d^2`` real system is square and
    nonsingular.
    """
    d = E.dim
    states = tomographic_frame(d)
    basis = hermitian_basis(d)
    A = _coords([rho.op for rho in states], basis)
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularReconstruction(f"tomographic system has condition number {cond:.3g}")
    w = np.linalg.solve(A, _required(E, states))
    Bs = np.array(basis)
    return [np.einsum("a,aij->ij", w[:, j], Bs) for j in range(len(E))]


@dataclass(frozen=True, eq=False)
class Certificate:
    """First failed check of :func:`verify_candidate`.

    ``state`` is a density operator on which the candidate probability
    ``candidate`` differs from the required ``required``; it is ``None``
    only for the algebraic identity check, where ``residual`` carries the
    size of the violation.
    """

    check: str
    outcome: str | None
    state: np.ndarray | None
    candidate: float | None
    required: float | None
    residual: float


class Verification(NamedTuple):
    passed: bool
    certificate: Certificate | None


def _probe_states(d: int) -> list[np.ndarray]:
    frame = [rho.op for rho in tomographic_frame(d)]
    probes = [np.eye(d, dtype=np.complex128) / d]
    probes += [(a + b) / 2 for a, b in combinations(frame, 2)]
    return probes


def identity_residuals(E: EffectFamily, W: Sequence[np.ndarray]) -> np.ndarray:
    """Per-outcome violation of ``Tr(rho W_j) Tr(rho E(X)) = Tr(rho E_j) Tr(rho)``.

    Both sides are quadratic forms on Hermitian ``rho``; they agree on all
    density operators iff they agree everywhere, iff their symmetric
    coefficient matrices over a Hermitian basis coincide. ``E`` is scaled
    to ``||E(X)||_F = 1`` first so the residual is scale-free.
    """
    d = E.dim
    basis = hermitian_basis(d)
    s = fro(E.total)
    t = _coords([E.total / s], basis)[0]
    u = _coords([np.eye(d)], basis)[0]
    e = _coords([Ej / s for Ej in E.effects], basis)
    w = _coords(list(W), basis)
    out = []
    for j in range(len(E)):
        Q = np.outer(w[j], t) - np.outer(e[j], u)
        out.append(fro(Q + Q.T) / 2)
    return np.array(out)


def verify_candidate(
    E: EffectFamily,
    W: Sequence[np.ndarray],
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    tol: float = VERIFY_TOL,
) -> Verification:
    """Check that candidate ``W`` is a POVM reproducing ``E``'s probabilities.

    Checks run in this order and the first failure is certified: probe
    states (the maximally mixed state, then midpoints of frame pairs),
    ``trials`` random densities, positivity of each ``W_j``, ``sum W_j = I``,
    and the exact quadratic identity of :func:`identity_residuals`.
    """
    W = [np.asarray(Wj, dtype=np.complex128) for Wj in W]
    d = E.dim
    labels = E.labels

    def state_check(check, states):
        for rho in states:
            req = prob_effects(E, rho).probs
            got = np.array([np.einsum("ab,ba->", rho, Wj).real for Wj in W])
            diff = np.abs(got - req)
            j = _first_max(diff)
            if diff[j] > tol:
                return Certificate(check, labels[j], rho, float(got[j]), float(req[j]), float(diff[j]))
        return None

    cert = state_check("probe", _probe_states(d))
    if cert is None:
        rand = (random_density(d, seed, _VERIFY_STREAM + k).op for k in range(trials))
        cert = state_check("random", rand)
    if cert is None:
        for lab, Wj in zip(labels, W):
            lam, V = np.linalg.eigh((Wj + Wj.conj().T) / 2)
            if lam[0] < -PSD_TOL:
                v = V[:, 0]
                rho = np.outer(v, v.conj())
                req = prob_effects(E, rho)[lab]
                cert = Certificate("psd", lab, rho, float(lam[0]), req, float(-lam[0]))
                break
    if cert is None:
        dev = sum(W) - np.eye(d)
        if fro(dev) > tol:
            lam, V = np.linalg.eigh((dev + dev.conj().T) / 2)
            k = int(np.argmax(np.abs(lam)))
            rho = np.outer(V[:, k], V[:, k].conj())
            cert = Certificate("sum", None, rho, 1 + float(lam[k]), 1.0, fro(dev))
    if cert is None:
        res = identity_residuals(E, W)
        j = _first_max(res)
        if res[j] > tol:
            cert = Certificate("identity", labels[j], None, None, None, float(res[j]))
    return Verification(cert is None, cert)


@dataclass(frozen=True, eq=False)
class AffinityWitness:
    """States ``a``, ``b`` and their midpoint where ``p_E(outcome | .)`` is not affine."""

    state_a: np.ndarray
    state_b: np.ndarray
    outcome: str
    p_a: float
    p_b: float
    p_mid: float

    @property
    def midpoint(self) -> np.ndarray:
        return (self.state_a + self.state_b) / 2

    @property
    def gap(self) -> float:
        return abs(self.p_mid - (self.p_a + self.p_b) / 2)


def _best_pair(E: EffectFamily, pairs, best: AffinityWitness | None) -> AffinityWitness | None:
    best_gap = best.gap if best is not None else -1.0
    for a, b in pairs:
        pa = prob_effects(E, a).probs
        pb = prob_effects(E, b).probs
        pm = prob_effects(E, (a + b) / 2).probs
        gaps = np.abs(pm - (pa + pb) / 2)
        j = _first_max(gaps)
        # ties within round-off keep the earlier candidate
        if gaps[j] > best_gap + 1e-12:
            best_gap = float(gaps[j])
            best = AffinityWitness(a, b, E.labels[j], float(pa[j]), float(pb[j]), float(pm[j]))
    return best


def find_affinity_witness(
    E: EffectFamily,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    tol: float = AFFINITY_FLOOR,
) -> AffinityWitness:
    """Pair of states maximizing the midpoint gap of ``p_E``.

    Pairs of tomographic frame states are tried first. Only when none of
    them shows a gap above ``AFFINITY_SIGNIFICANCE`` are ``trials`` random
    pairs (and frame/random pairs) searched as well.

    Raises
    ------
    NoWitnessFound
        If the largest gap is at most ``tol``.
    """
    frame = [rho.op for rho in tomographic_frame(E.dim)]
    best = _best_pair(E, combinations(frame, 2), None)
    if best is None or best.gap <= AFFINITY_SIGNIFICANCE:
        rand = [random_density(E.dim, seed, _WITNESS_STREAM + k).op for k in range(2 * trials)]
        pairs = list(zip(rand[::2], rand[1::2]))
        pairs += [(frame[k % len(frame)], r) for k, r in enumerate(rand[::2])]
        best = _best_pair(E, pairs, best)
    gap = best.gap if best is not None else 0.0
    if gap <= tol:
        raise NoWitnessFound(f"largest midpoint gap {gap:.3g} <= {tol:.3g}", gap)
    return best


class Status(str, enum.Enum):
    REPRESENTABLE = "Representable"
    NOT_REPRESENTABLE = "NotRepresentable"


@dataclass(frozen=True, eq=False)
class RepresentabilityVerdict:
    status: Status
    povm: Povm | None = None
    witness: AffinityWitness | None = None
    candidate: tuple | None = None
    certificate: Certificate | None = None

    def __post_init__(self):
        object.__setattr__(self, "status", Status(self.status))
        if self.status is Status.REPRESENTABLE:
            if not isinstance(self.povm, Povm):
                raise InternalInvariantError("a Representable verdict needs its POVM")
        else:
            if self.witness is None or self.witness.gap <= AFFINITY_SIGNIFICANCE:
                raise InternalInvariantError("a NotRepresentable verdict needs a significant witness")

    @property
    def representable(self) -> bool:
        return self.status is Status.REPRESENTABLE


def decide(
    E: EffectFamily,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    tol: float = VERIFY_TOL,
) -> RepresentabilityVerdict:
    """Reconstruct-and-verify decision of POVM representability.

    Raises
    ------
    IndeterminateVerdict
        When verification fails but the best affinity gap is not above
        ``AFFINITY_SIGNIFICANCE``.
    """
    W = reconstruct_candidate(E)
    passed, cert = verify_candidate(E, W, trials, seed, tol)
    if passed:
        povm = Povm(tuple(W), E.labels, tol=max(tol, 1e-10))
        return RepresentabilityVerdict(Status.REPRESENTABLE, povm=povm, candidate=tuple(W))
    try:
        wit = find_affinity_witness(E, trials, seed)
    except NoWitnessFound as exc:
        raise IndeterminateVerdict(
            f"candidate failed the {cert.check} check (residual {cert.residual:.3g}) "
            f"but no affinity violation was found",
            exc.best_gap,
        ) from None
    if wit.gap <= AFFINITY_SIGNIFICANCE:
        raise IndeterminateVerdict(
            f"affinity gap {wit.gap:.3g} lies in the indeterminate band "
            f"({AFFINITY_FLOOR:g}, {AFFINITY_SIGNIFICANCE:g}]",
            wit.gap,
        )
    return RepresentabilityVerdict(
        Status.NOT_REPRESENTABLE, witness=wit, candidate=tuple(W), certificate=cert
    )
