import numpy as np
import pytest

from genobs.ensembles import haar_unitary, random_frame
from genobs.errors import DimMismatch, InvalidTransitionMatrix
from genobs.observables import ObliqueFrame, pvm_from_orthonormal
from genobs.transition import TransitionMatrix, frame_transition, is_doubly_stochastic, transition_matrix

from conftest import KET0, KET1, PLUS

MINUS = np.array([1, -1]) / np.sqrt(2)


def pvm(U):
    return pvm_from_orthonormal(list(U.T), list(range(U.shape[0])))


def test_haar_unitary_is_unitary_and_seeded():
    U = haar_unitary(4, 9)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(4), atol=1e-12)
    np.testing.assert_array_equal(U, haar_unitary(4, 9))


def test_same_pvm_is_identity():
    A = pvm(haar_unitary(3, 1))
    np.testing.assert_allclose(transition_matrix(A, A).entries, np.eye(3), atol=1e-12)


def test_unbiased_bases():
    Z = pvm_from_orthonormal([KET0, KET1], [1, -1])
    X = pvm_from_orthonormal([PLUS, MINUS], [1, -1])
    P = transition_matrix(Z, X)
    np.testing.assert_allclose(P.entries, np.full((2, 2), 0.5), atol=1e-15)
    assert is_doubly_stochastic(P)


def test_random_pairs_rows_and_columns():
    for seed in range(50):
        A, B = pvm(haar_unitary(3, seed)), pvm(haar_unitary(3, seed, 1))
        P = transition_matrix(A, B)
        # oracle: entries of a unitary V = UA* UB
        V = np.column_stack(A.basis).conj().T @ np.column_stack(B.basis)
        np.testing.assert_allclose(V @ V.conj().T, np.eye(3), atol=1e-12)
        assert np.abs(P.row_sums - 1).max() <= 1e-10
        assert np.abs(P.col_sums - 1).max() <= 1e-10


def test_frame_transition_orthonormal_reduces():
    U = haar_unitary(3, 4)
    A = ObliqueFrame(tuple(U.T))
    B = pvm(haar_unitary(3, 5))
    F = frame_transition(A, B)
    T = transition_matrix(B, pvm(U))
    np.testing.assert_allclose(F.entries, T.entries, atol=1e-12)


def test_frame_transition_oblique_example(frame01):
    B = pvm_from_orthonormal([KET0, KET1], [0, 1])
    P = frame_transition(frame01, B)
    # row |0>: c = (1, 0); row |1>: c = (-1, sqrt2) -> (1/3, 2/3)
    oracle = np.array([[1, 0], [1 / 3, 2 / 3]])
    np.testing.assert_allclose(P.entries, oracle, atol=1e-12)
    np.testing.assert_allclose(P.col_sums, [4 / 3, 2 / 3], atol=1e-12)
    assert not is_doubly_stochastic(P)


def test_frame_transition_rows_are_distributions():
    for seed in range(20):
        P = frame_transition(random_frame(3, seed), pvm(haar_unitary(3, seed)))
        assert np.abs(P.row_sums - 1).max() <= 1e-10
        assert P.entries.min() >= 0


def test_is_doubly_stochastic_examples():
    assert is_doubly_stochastic(TransitionMatrix(np.eye(3)))
    assert is_doubly_stochastic(TransitionMatrix(np.full((2, 2), 0.5)))
    assert not is_doubly_stochastic(TransitionMatrix([[1, 0], [0.5, 0.5]]))


def test_validation():
    with pytest.raises(InvalidTransitionMatrix):
        TransitionMatrix([[0.5, 0.6], [0.5, 0.5]])
    with pytest.raises(InvalidTransitionMatrix):
        TransitionMatrix([[1.0, 0.0, 0.0]])
    with pytest.raises(DimMismatch):
        transition_matrix(pvm(np.eye(2)), pvm(np.eye(3)))
    with pytest.raises(DimMismatch):
        frame_transition(ObliqueFrame((KET0, PLUS)), pvm(np.eye(3)))
