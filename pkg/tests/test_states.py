import numpy as np
import pytest

from genobs.errors import InvalidState, NotHermitian, NotPSD, ZeroVector
from genobs.linalg import is_psd
from genobs.states import (
    DensityOperator,
    GeneralizedState,
    normalize,
    pure_state,
    random_density,
    tomographic_frame,
)

from conftest import KET0, PLUS


def real_embedding(ops):
    return np.array([np.concatenate([A.real.ravel(), A.imag.ravel()]) for A in ops])


def test_pure_state_examples():
    np.testing.assert_array_equal(pure_state(KET0).op, np.diag([1, 0]))
    np.testing.assert_allclose(pure_state(PLUS).op, np.full((2, 2), 0.5))
    rho = pure_state(2 * KET0)
    np.testing.assert_array_equal(rho.op, np.diag([4, 0]))
    assert rho.trace == 4
    with pytest.raises(ZeroVector):
        pure_state([0, 0])


def test_pure_state_spectrum():
    gen = np.random.default_rng(0)
    for _ in range(100):
        d = gen.integers(1, 6)
        psi = 3 * (gen.standard_normal(d) + 1j * gen.standard_normal(d))
        lam = np.linalg.eigvalsh(pure_state(psi).op)
        assert abs(lam[-1] - np.linalg.norm(psi) ** 2) <= 1e-10 * max(1, lam[-1])
        assert np.all(np.abs(lam[:-1]) <= 1e-10 * max(1, lam[-1]))


def test_normalize_examples():
    np.testing.assert_array_equal(normalize(np.diag([4.0, 0])).op, np.diag([1, 0]))
    np.testing.assert_array_equal(normalize(np.diag([1.0, 1])).op, np.diag([0.5, 0.5]))
    rho = random_density(3, 4)
    np.testing.assert_allclose(normalize(rho).op, rho.op, atol=1e-15)
    assert isinstance(normalize(rho), DensityOperator)


@pytest.mark.parametrize("c", [1e-6, 1.0, 1e6])
def test_normalize_scale_invariant(c):
    rho = random_density(3, 8).op * 2.5
    np.testing.assert_allclose(normalize(c * rho).op, normalize(rho).op, atol=1e-12, rtol=0)


def test_state_validation():
    with pytest.raises(NotHermitian):
        GeneralizedState([[1, 1], [0, 1]])
    with pytest.raises(NotPSD):
        GeneralizedState(np.diag([1, -0.5]))
    with pytest.raises(InvalidState):
        GeneralizedState(np.zeros((2, 2)))
    with pytest.raises(InvalidState):
        DensityOperator(np.diag([1.0, 1.0]))


def test_state_is_read_only():
    rho = GeneralizedState(np.diag([1.0, 2.0]))
    with pytest.raises(ValueError):
        rho.op[0, 0] = 5


def test_random_density_contract():
    a, b = random_density(2, 17), random_density(2, 17)
    np.testing.assert_array_equal(a.op, b.op)
    assert not np.array_equal(random_density(2, 18).op, a.op)
    for seed in range(100):
        rho = random_density(3, seed)
        assert is_psd(rho.op)
        assert abs(np.trace(rho.op) - 1) <= 1e-12
        assert np.linalg.eigvalsh(rho.op)[0] > 0


def test_random_density_matches_ginibre_recipe():
    from genobs import rng

    z = rng.generator(9, 0).standard_normal((2, 2, 2))
    G = z[..., 0] + 1j * z[..., 1]
    R = G @ G.conj().T
    np.testing.assert_allclose(random_density(2, 9).op, R / np.trace(R).real, atol=1e-15)


def test_tomographic_frame_dim1():
    frame = tomographic_frame(1)
    assert len(frame) == 1
    np.testing.assert_array_equal(frame[0].op, [[1]])


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_tomographic_frame_spans(d):
    frame = tomographic_frame(d)
    assert len(frame) == d * d
    X = real_embedding([rho.op for rho in frame])
    assert np.linalg.matrix_rank(X) == d * d
    gram = X @ X.T
    assert np.isfinite(np.linalg.cond(gram))
    for rho in frame:
        assert abs(rho.trace - 1) <= 1e-15
        np.testing.assert_allclose(rho.op @ rho.op, rho.op, atol=1e-15)


def test_tomographic_frame_order_dim2():
    ops = [rho.op for rho in tomographic_frame(2)]
    np.testing.assert_allclose(ops[0], np.diag([1, 0]))
    np.testing.assert_allclose(ops[1], np.diag([0, 1]))
    np.testing.assert_allclose(ops[2], np.full((2, 2), 0.5))
    np.testing.assert_allclose(ops[3], [[0.5, -0.5j], [0.5j, 0.5]])
