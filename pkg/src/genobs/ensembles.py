"""Seeded random instances: unitaries, frames, effect families, POVMs.

All draws go through :mod:`genobs.rng`, so an instance is fully determined
by ``(seed, stream)``.
"""

from __future__ import annotations

import numpy as np

from . import rng
from .observables import EffectFamily, ObliqueFrame, Povm


def haar_unitary(dim: int, seed: int, stream: int = 0) -> np.ndarray:
    """Haar-random unitary: QR of a complex Ginibre matrix, R diagonal made positive."""
    Z = rng.complex_gaussian(rng.generator(seed, stream), (dim, dim))
    Q, R = np.linalg.qr(Z)
    ph = np.diagonal(R) / np.abs(np.diagonal(R))
    return Q * ph


def random_vector(dim: int, seed: int, stream: int = 0) -> np.ndarray:
    v = rng.complex_gaussian(rng.generator(seed, stream), (dim,))
    return v / np.linalg.norm(v)


def random_frame(dim: int, seed: int, stream: int = 0, max_condition: float = 1e4) -> ObliqueFrame:
    """Frame of ``dim`` random unit vectors with condition number below ``max_condition``."""
    gen = rng.generator(seed, stream)
    while True:
        F = rng.complex_gaussian(gen, (dim, dim))
        F /= np.linalg.norm(F, axis=0)
        if np.linalg.cond(F) <= max_condition:
            return ObliqueFrame(tuple(F.T))


def random_effect_family(dim: int, n: int, seed: int, stream: int = 0) -> EffectFamily:
    """Generic family ``E_j = A_j* A_j`` rescaled so ``||E(X)||_F = 1``."""
    A = rng.complex_gaussian(rng.generator(seed, stream), (n, dim, dim))
    E = np.einsum("jba,jbc->jac", A.conj(), A)
    E /= np.linalg.norm(E.sum(axis=0))
    return EffectFamily(tuple(E))


def random_povm(dim: int, n: int, seed: int, stream: int = 0) -> Povm:
    """``W_j = S^{-1/2} A_j S^{-1/2}`` with ``S = sum_j A_j`` for generic PSD ``A_j``."""
    A = random_effect_family(dim, n, seed, stream).effects
    lam, V = np.linalg.eigh(sum(A))
    s = (V / np.sqrt(lam)) @ V.conj().T
    W = [s @ a @ s for a in A]
    # absorb the O(eps) defect of sum(W) - I into the last effect
    W[-1] = W[-1] + (np.eye(dim) - sum(W))
    return Povm(tuple(W))
