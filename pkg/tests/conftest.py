from pathlib import Path

import numpy as np
import pytest

from genobs.observables import EffectFamily, ObliqueFrame

FIXTURES = Path(__file__).parent / "fixtures"
GOLDENS = Path(__file__).parent / "goldens"

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]])
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def example_family():
    return EffectFamily((2 * np.outer(KET0, KET0), np.outer(KET1, KET1)), ("0", "1"))


def oblique_frame():
    return ObliqueFrame((KET0, PLUS))


def solve2x2(a, b, c, d, y):
    """Cramer's rule for [[a, b], [c, d]] x = y."""
    det = a * d - b * c
    return np.array([(y[0] * d - b * y[1]) / det, (a * y[1] - c * y[0]) / det])


def ginibre_density(gen, d):
    G = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
    R = G @ G.conj().T
    return R / np.trace(R).real


@pytest.fixture
def example():
    return example_family()


@pytest.fixture
def frame01():
    return oblique_frame()


def affinity_oracle(effects, pairs=10_000, seed=0, threshold=1e-7):
    """Brute-force midpoint test: True iff the probability map looks affine.

    Draws ``pairs`` random density pairs with numpy's default generator and
    evaluates ``Tr(rho E_j) / Tr(rho E(X))`` directly, without the package.
    """
    E = np.array([np.asarray(e) for e in effects])
    d = E.shape[1]
    T = E.sum(axis=0)
    gen = np.random.default_rng(seed)

    def densities(n):
        G = gen.standard_normal((n, d, d)) + 1j * gen.standard_normal((n, d, d))
        R = G @ G.conj().transpose(0, 2, 1)
        return R / np.trace(R, axis1=1, axis2=2).real[:, None, None]

    def probs(R):
        num = np.einsum("nab,jba->nj", R, E).real
        den = np.einsum("nab,ba->n", R, T).real
        return num / den[:, None]

    A, B = densities(pairs), densities(pairs)
    gap = np.abs(probs((A + B) / 2) - (probs(A) + probs(B)) / 2)
    return bool(gap.max() <= threshold)
