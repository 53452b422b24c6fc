import itertools
import math

import numpy as np
import pytest

from welchkit import frames
from welchkit.symtensor import lift, lifted_gram, multi_indices, multinomial_weights, sym_dim


def rand_vec(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


@pytest.mark.parametrize("n,k,expected", [(2, 2, 3), (3, 2, 6), (2, 3, 4), (5, 0, 1), (1, 7, 1)])
def test_sym_dim(n, k, expected):
    assert sym_dim(n, k) == expected


def test_sym_dim_overflow():
    with pytest.raises(OverflowError):
        sym_dim(200, 100)


def test_graded_lex_order():
    assert multi_indices(2, 2).tolist() == [[2, 0], [1, 1], [0, 2]]
    assert multi_indices(3, 1).tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_lift_of_basis_vector():
    L = lift([1, 0, 0], 3)
    assert L[0] == 1 and np.all(L[1:] == 0)


def test_lift_two_dim_square():
    a, b = 0.3 + 0.2j, -1.1j
    np.testing.assert_allclose(lift([a, b], 2), [a * a, np.sqrt(2) * a * b, b * b])


def test_lift_unit_norm():
    assert abs(np.linalg.norm(lift(np.array([1, 1]) / np.sqrt(2), 2)) - 1) < 1e-15


def full_tensor_power(v, k):
    out = np.array([1.0 + 0j])
    for _ in range(k):
        out = np.kron(out, v)
    return out


@pytest.mark.parametrize("n,k", [(2, 3), (3, 2), (3, 3), (4, 2)])
def test_lift_against_full_tensor_enumeration(rng, n, k):
    """Group the n^k coordinates of v^{⊗k} by multi-index: each group has
    multinomial(alpha) equal entries, so the symmetric coordinate is
    sqrt(count) * entry."""
    v = rand_vec(rng, n)
    T = full_tensor_power(v, k)
    groups = {}
    for flat, seq in enumerate(itertools.product(range(n), repeat=k)):
        alpha = tuple(seq.count(i) for i in range(n))
        groups.setdefault(alpha, []).append(T[flat])
    L = lift(v, k)
    for pos, alpha in enumerate(map(tuple, multi_indices(n, k))):
        entries = groups[alpha]
        assert np.allclose(entries, entries[0])
        assert len(entries) == multinomial_weights(n, k)[pos]
        assert abs(L[pos] - math.sqrt(len(entries)) * entries[0]) < 1e-12
    # both coordinate systems carry the same norm
    assert abs(np.linalg.norm(T) - np.linalg.norm(L)) < 1e-12


def test_inner_product_identity(rng):
    for _ in range(200):
        n, k = rng.integers(1, 5), rng.integers(1, 5)
        v, w = rand_vec(rng, n), rand_vec(rng, n)
        v /= np.linalg.norm(v)
        w /= np.linalg.norm(w)
        ip = np.vdot(v, w)
        assert abs(np.vdot(lift(v, k), lift(w, k)) - ip**k) <= 1e-10 * (1 + abs(ip) ** k)


def test_length_is_sym_dim(rng):
    for n in range(1, 5):
        for k in range(0, 5):
            assert lift(rand_vec(rng, n), k).shape == (sym_dim(n, k),)


def test_permutation_relabels_coordinates(rng):
    n, k = 3, 3
    v = rand_vec(rng, n)
    perm = np.array([2, 0, 1])
    E = multi_indices(n, k)
    index = {tuple(a): i for i, a in enumerate(E)}
    L, Lp = lift(v, k), lift(v[perm], k)
    for i, alpha in enumerate(E):
        # (v[perm])^alpha = v^beta with beta[perm[j]] = alpha[j]
        beta = np.zeros(n, dtype=int)
        beta[perm] = alpha
        assert abs(Lp[i] - L[index[tuple(beta)]]) < 1e-12


def test_lifted_gram_examples(onb2, mercedes, sic):
    np.testing.assert_allclose(lifted_gram(onb2, 2), np.eye(2), atol=1e-15)
    G = lifted_gram(mercedes, 2)
    np.testing.assert_allclose(G[~np.eye(3, dtype=bool)], 0.25, atol=1e-12)
    G = lifted_gram(sic, 2)
    np.testing.assert_allclose(np.abs(G[~np.eye(4, dtype=bool)]), 1 / 3, atol=1e-12)


def test_lifted_gram_is_hadamard_power(rng):
    for _ in range(20):
        X = frames.random_unit_frame(int(rng.integers(2, 9)), int(rng.integers(1, 5)), rng)
        for k in range(1, 5):
            assert np.max(np.abs(lifted_gram(X, k) - frames.hadamard_power(frames.gram(X), k))) <= 1e-10
