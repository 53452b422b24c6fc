import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from welchkit import linalg
from welchkit.errors import InputError

from conftest import random_hermitian


def closed_form_2x2(A):
    a, d, b = A[0, 0].real, A[1, 1].real, A[0, 1]
    mid, rad = (a + d) / 2, np.hypot((a - d) / 2, abs(b))
    return np.array([mid + rad, mid - rad])


def test_identity():
    E = linalg.hermitian_eig(np.eye(3))
    np.testing.assert_allclose(E.eigenvalues, [1, 1, 1])


def test_diagonal_keeps_standard_basis():
    E = linalg.hermitian_eig(np.diag([2.0, 1.0]))
    np.testing.assert_allclose(E.eigenvalues, [2, 1])
    np.testing.assert_allclose(np.abs(E.eigenvectors), np.eye(2))


def test_pauli_y_against_closed_form():
    A = np.array([[0, 1j], [-1j, 0]])
    E = linalg.hermitian_eig(A)
    np.testing.assert_allclose(closed_form_2x2(A), [1, -1])
    np.testing.assert_allclose(E.eigenvalues, closed_form_2x2(A), atol=1e-14)


def test_random_2x2_against_closed_form(rng):
    for _ in range(50):
        A = random_hermitian(rng, 2)
        np.testing.assert_allclose(linalg.hermitian_eig(A).eigenvalues, closed_form_2x2(A), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 16, 33, 64])
def test_round_trip_and_unitarity(rng, n):
    A = random_hermitian(rng, n) * 10
    lam, Q = linalg.hermitian_eig(A)
    assert np.all(np.diff(lam) <= 0)
    scale = 1 + np.linalg.norm(A)
    assert np.linalg.norm(A - Q @ np.diag(lam) @ Q.conj().T) <= 1e-10 * scale
    assert np.linalg.norm(Q.conj().T @ Q - np.eye(n)) <= 1e-10 * n
    # per-column residual
    resid = np.linalg.norm(A @ Q - Q * lam, axis=0)
    assert np.all(resid <= 1e-10 * max(1.0, np.max(np.abs(lam))))
    # independent LAPACK oracle
    np.testing.assert_allclose(lam, np.linalg.eigvalsh(A)[::-1], atol=1e-10 * scale)


def test_degenerate_spectrum(rng):
    Z = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    U, _ = np.linalg.qr(Z)
    A = U @ np.diag([3, 3, 3, 1, 1, 0]) @ U.conj().T
    np.testing.assert_allclose(linalg.hermitian_eig(A).eigenvalues, [3, 3, 3, 1, 1, 0], atol=1e-12)


def test_rejects_non_finite_and_non_hermitian():
    with pytest.raises(InputError):
        linalg.hermitian_eig(np.array([[np.nan, 0], [0, 1]]))
    with pytest.raises(InputError):
        linalg.hermitian_eig(np.array([[1, 1], [0, 1]]))
    with pytest.raises(InputError):
        linalg.hermitian_eig(np.ones((2, 3)))


def test_numeric_rank():
    assert linalg.numeric_rank(linalg.hermitian_eig(np.diag([1.0, 1.0, 0.0]))) == 2
    assert linalg.numeric_rank(linalg.hermitian_eig(np.zeros((3, 3)))) == 0


def test_rank_of_vectors_from_two_dim_basis(rng):
    basis = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    X = rng.standard_normal((3, 2)) @ basis
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    G = X.conj() @ X.T
    assert linalg.numeric_rank(linalg.hermitian_eig(G)) == 2


def test_norm_and_trace():
    assert linalg.hs_norm_sq(np.eye(4)) == 4
    assert linalg.trace(np.eye(4)) == 4
    D = np.diag([2.0, 1.0])
    assert linalg.hs_norm_sq(D) == 5 and linalg.trace(D) == 3
    assert linalg.hs_norm_sq(D) >= abs(linalg.trace(D)) ** 2 / 2


def test_hs_norm_matches_eigenvalues(rng):
    A = random_hermitian(rng, 4)
    lam = linalg.hermitian_eig(A).eigenvalues
    assert abs(linalg.hs_norm_sq(A) - np.sum(lam**2)) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10), st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_trace_rank_inequality(n, r, seed):
    rng = np.random.default_rng(seed)
    r = min(r, n)
    B = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
    chk = linalg.trace_rank_check(B @ B.conj().T)
    assert chk.rank == r
    assert chk.hs_norm_sq >= chk.bound * (1 - 1e-12)


def test_trace_rank_equality_for_scaled_projector(rng):
    Z = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
    U, _ = np.linalg.qr(Z)
    T = 2.5 * U[:, :4] @ U[:, :4].conj().T
    chk = linalg.trace_rank_check(T)
    assert chk.rank == 4 and chk.equality
    assert abs(chk.relative_gap) <= 1e-12
