"""Sampling and reconstruction of homogeneous polynomials.

Polynomials here live in the *conjugated* variables: a degree-k polynomial
in n variables is

    p(z) = sum_alpha c_alpha * prod_i conj(z_i) ** alpha_i

so that ``z -> <z, w>^k`` belongs to the space, and p(c z) = conj(c)^k p(z).
This is not the usual holomorphic convention.

Coefficients ``c_alpha`` are stored in the plain monomial basis, in the
graded-lex order of :func:`welchkit.symtensor.multi_indices`. The
orthonormal Sym^k coordinates of the same polynomial are
``c_alpha / sqrt(multinomial(alpha))``; :func:`to_sym_coords` and
:func:`from_sym_coords` are the only places that conversion happens.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DomainError, InputError, RankDeficiencyError
from .frames import as_frame
from .symtensor import monomials, multi_indices, multinomial_weights, sym_dim


@dataclass(frozen=True, eq=False)
class HomogeneousPolynomial:
    n: int
    k: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size != sym_dim(self.n, self.k):
            raise InputError(f"expected {sym_dim(self.n, self.k)} coefficients, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise InputError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __call__(self, z) -> complex:
        return eval_poly(self, z)

    def terms(self) -> list[tuple[tuple[int, ...], complex]]:
        return [(tuple(int(a) for a in alpha), complex(c)) for alpha, c in zip(multi_indices(self.n, self.k), self.coeffs)]


def to_sym_coords(p: HomogeneousPolynomial) -> np.ndarray:
    return p.coeffs / np.sqrt(multinomial_weights(p.n, p.k))


def from_sym_coords(v, n: int, k: int) -> HomogeneousPolynomial:
    return HomogeneousPolynomial(n, k, np.asarray(v) * np.sqrt(multinomial_weights(n, k)))


def pure_power(w, k: int) -> HomogeneousPolynomial:
    """The polynomial ``z -> <z, w>^k``."""
    w = np.asarray(w, dtype=complex)
    return HomogeneousPolynomial(w.size, k, multinomial_weights(w.size, k) * monomials(w, k))


def eval_poly(p: HomogeneousPolynomial, z) -> complex:
    z = np.asarray(z, dtype=complex)
    if z.shape[-1] != p.n:
        raise InputError(f"point has {z.shape[-1]} coordinates, polynomial has {p.n} variables")
    return complex(monomials(z.conj(), p.k) @ p.coeffs)


def sampling_matrix(X, k: int) -> np.ndarray:
    """``(m, sym_dim(d, k))`` matrix taking coefficients to samples at the frame points."""
    X = as_frame(X)
    return monomials(X.vectors.conj(), k)


def sample(p: HomogeneousPolynomial, X) -> np.ndarray:
    return sampling_matrix(X, p.k) @ p.coeffs


def _normal_eig(A: np.ndarray) -> linalg.EigenDecomposition:
    return linalg.hermitian_eig(A.conj().T @ A)


def sampling_rank(X, k: int) -> int:
    return linalg.numeric_rank(_normal_eig(sampling_matrix(X, k)))


def is_uniquely_sampled(X, k: int) -> bool:
    """Whether samples at the points of ``X`` determine every degree-k polynomial.

    True iff the sampling matrix has full column rank ``sym_dim(d, k)``,
    i.e. iff the lifted points frame Sym^k(C^d).
    """
    X = as_frame(X)
    return sampling_rank(X, k) == sym_dim(X.d, k)


def kernel_polynomial(X, k: int) -> HomogeneousPolynomial | None:
    """A unit-norm polynomial vanishing at every point of ``X``, or None.

    Taken from the eigenvector of the smallest eigenvalue of the normal
    matrix; returns None when the points sample uniquely.
    """
    X = as_frame(X)
    E = _normal_eig(sampling_matrix(X, k))
    if linalg.numeric_rank(E) == sym_dim(X.d, k):
        return None
    return HomogeneousPolynomial(X.d, k, E.eigenvectors[:, -1])


def reconstruct(samples, X, k: int) -> HomogeneousPolynomial:
    """Least-squares polynomial with the given samples at the points of ``X``.

    Solves the normal equations through the Jacobi eigendecomposition,
    inverting only eigenvalues above the rank threshold.

    Raises
    ------
    RankDeficiencyError
        If the points do not determine degree-k polynomials uniquely; the
        error's ``kernel_dim`` is the dimension of the ambiguity.
    """
    X = as_frame(X)
    s = np.asarray(samples, dtype=complex).reshape(-1)
    if s.size != X.m:
        raise InputError(f"expected {X.m} samples, got {s.size}")
    if k < 0:
        raise DomainError("degree must be >= 0")
    A = sampling_matrix(X, k)
    E = _normal_eig(A)
    r = linalg.numeric_rank(E)
    D = sym_dim(X.d, k)
    if r < D:
        raise RankDeficiencyError(f"{X.m} points do not determine degree-{k} polynomials in {X.d} variables", D - r)
    lam, V = E
    coeffs = V[:, :r] @ ((V[:, :r].conj().T @ (A.conj().T @ s)) / lam[:r])
    return HomogeneousPolynomial(X.d, k, coeffs)
