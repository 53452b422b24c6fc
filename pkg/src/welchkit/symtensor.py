"""Coordinates on symmetric tensor powers Sym^k(C^n).

Basis vectors are indexed by exponent tuples ``alpha`` with
``sum(alpha) == k``, listed in graded lexicographic order (for n=2, k=2:
(2,0), (1,1), (0,2)). The basis element for ``alpha`` is the normalized
symmetrization of ``e_1^{alpha_1} ... e_n^{alpha_n}``, so the lift

    lift(v)[alpha] = sqrt(k! / prod(alpha_i!)) * prod(v_i ** alpha_i)

is isometric on tensor powers: <lift(v), lift(w)> = <v, w>**k.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np

from .errors import DomainError

MAX_EXACT = 2**53


def checked_comb(a: int, b: int) -> int:
    """Binomial coefficient, refusing values that do not fit a double exactly."""
    value = math.comb(a, b)
    if value > MAX_EXACT:
        raise OverflowError(f"binom({a}, {b}) = {value} exceeds 2**53")
    return value


def sym_dim(n: int, k: int) -> int:
    """Dimension binom(n+k-1, k) of Sym^k over an n-dimensional space."""
    if n < 1 or k < 0:
        raise DomainError(f"sym_dim needs n >= 1 and k >= 0, got n={n}, k={k}")
    return checked_comb(n + k - 1, k)


@lru_cache(maxsize=256)
def _exponents(n: int, k: int) -> np.ndarray:
    rows = []
    for combo in combinations_with_replacement(range(n), k):
        alpha = [0] * n
        for i in combo:
            alpha[i] += 1
        rows.append(alpha)
    out = np.array(rows, dtype=int).reshape(-1, n)
    out.setflags(write=False)
    return out


def multi_indices(n: int, k: int) -> np.ndarray:
    """All exponent vectors of degree k in n variables, graded-lex order.

    Returns an integer array of shape ``(sym_dim(n, k), n)``.
    """
    sym_dim(n, k)
    return _exponents(n, k)


@lru_cache(maxsize=256)
def _multinomials(n: int, k: int) -> np.ndarray:
    E = _exponents(n, k)
    kf = math.factorial(k)
    out = np.array([kf // math.prod(math.factorial(a) for a in row) for row in E], dtype=float)
    out.setflags(write=False)
    return out


def multinomial_weights(n: int, k: int) -> np.ndarray:
    """``k! / prod(alpha_i!)`` for every multi-index, in basis order."""
    sym_dim(n, k)
    return _multinomials(n, k)


def monomials(Z, k: int) -> np.ndarray:
    """Evaluate every monomial ``prod z_i**alpha_i`` of degree k.

    ``Z`` has shape ``(n,)`` or ``(m, n)``; the result has a trailing axis
    of length ``sym_dim(n, k)``.
    """
    Z = np.asarray(Z, dtype=complex)
    n = Z.shape[-1]
    E = multi_indices(n, k)
    # explicit products; 0**0 == 1 as required
    return np.prod(Z[..., None, :] ** E, axis=-1)


def lift(v, k: int) -> np.ndarray:
    """Coordinates of ``v^{⊗k}`` in the orthonormal weighted-monomial basis.

    Accepts a single vector of shape ``(n,)`` or a stack ``(m, n)``.
    """
    if k < 0:
        raise DomainError(f"tensor order must be >= 0, got {k}")
    v = np.asarray(v, dtype=complex)
    n = v.shape[-1]
    return np.sqrt(multinomial_weights(n, k)) * monomials(v, k)


def sym_inner(a, b) -> complex:
    """Inner product on Sym^k coordinates, conjugate-linear in ``a``."""
    return complex(np.vdot(a, b))


def lifted_gram(X, k: int) -> np.ndarray:
    """Gram matrix ``<lift(x_i), lift(x_j)>`` of the lifted frame.

    ``X`` is a FrameSet or an ``(m, d)`` array of row vectors.
    """
    vectors = getattr(X, "vectors", X)
    L = lift(vectors, k)
    return L.conj() @ L.T
