"""Hermitian linear algebra primitives.

Everything in the toolkit that needs a spectrum goes through
:func:`hermitian_eig`, a cyclic Jacobi solver for complex Hermitian
matrices. Rotations are scheduled in round-robin order so that each
round consists of disjoint index pairs; those rotations commute and are
applied together with vectorized row/column updates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InputError

HERMITIAN_TOL = 1e-12
DEFAULT_RANK_TOL = 1e-10
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


class EigenDecomposition(NamedTuple):
    """Eigenvalues (real, descending) and eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_hermitian(A, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate ``A`` as Hermitian and return an exactly Hermitian copy.

    The asymmetry allowance is ``tol * max(1, max|A_ij|)``. The returned
    matrix is ``(A + A^*)/2``, so its diagonal is exactly real.
    """
    A = np.array(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InputError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    asym = float(np.max(np.abs(A - A.conj().T))) if A.size else 0.0
    if asym > tol * scale:
        raise InputError(f"matrix is not Hermitian (max |A - A*| = {asym:.3e})")
    return 0.5 * (A + A.conj().T)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # circle method; index n is a bye when n is odd
    size = n + (n % 2)
    order = list(range(size))
    rounds = []
    for _ in range(size - 1):
        p, q = [], []
        for i in range(size // 2):
            a, b = order[i], order[size - 1 - i]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=int), np.array(q, dtype=int)))
        order = [order[0]] + [order[-1]] + order[1:-1]
    return rounds


def _off_norm(A: np.ndarray) -> float:
    off = A.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def hermitian_eig(A, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    A : array_like, shape (n, n)
        Hermitian matrix (checked by :func:`as_hermitian`).
    tol : float
        Stop once the off-diagonal Hilbert-Schmidt norm is at most
        ``tol * ||A||_HS``.
    max_sweeps : int
        Hard cap on full sweeps over all index pairs.

    Returns
    -------
    EigenDecomposition
        Eigenvalues sorted descending, and a unitary matrix whose columns
        are the matching eigenvectors.
    """
    A = as_hermitian(A)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    if n == 0:
        return EigenDecomposition(np.zeros(0), V)

    target = tol * float(np.linalg.norm(A))
    rounds = _round_robin(n)
    off = _off_norm(A)
    for _ in range(max_sweeps):
        if off <= target:
            break
        for P, Q in rounds:
            if P.size == 0:
                continue
            apq = A[P, Q]
            mag = np.abs(apq)
            active = mag > 0.0
            if not np.any(active):
                continue
            P, Q, apq, mag = P[active], Q[active], apq[active], mag[active]
            app = A[P, P].real
            aqq = A[Q, Q].real
            phase = apq / mag
            tau = (aqq - app) / (2.0 * mag)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            c = 1.0 / np.hypot(1.0, t)
            s = t * c

            # A <- A U, V <- V U  (columns p, q)
            for M in (A, V):
                Mp = M[:, P].copy()
                Mq = M[:, Q]
                M[:, P] = Mp * c - Mq * (s * phase.conj())
                M[:, Q] = Mp * (s * phase) + Mq * c
            # A <- U^* A  (rows p, q)
            Ap = A[P, :].copy()
            Aq = A[Q, :]
            A[P, :] = c[:, None] * Ap - (s * phase)[:, None] * Aq
            A[Q, :] = (s * phase.conj())[:, None] * Ap + c[:, None] * Aq
            A[P, Q] = 0.0
            A[Q, P] = 0.0
            idx = np.concatenate([P, Q])
            A[idx, idx] = A[idx, idx].real
        new_off = _off_norm(A)
        if new_off >= off:
            # rounding floor reached
            off = new_off
            break
        off = new_off

    w = np.diagonal(A).real.copy()
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(w[order], V[:, order])


def numeric_rank(E: EigenDecomposition, rel_tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of eigenvalues with ``|lam| > rel_tol * max(1, max|lam|) * dim``."""
    lam = np.asarray(E.eigenvalues)
    if lam.size == 0:
        return 0
    threshold = rel_tol * max(1.0, float(np.max(np.abs(lam)))) * lam.size
    return int(np.count_nonzero(np.abs(lam) > threshold))


def hs_norm_sq(A) -> float:
    """Squared Hilbert-Schmidt (Frobenius) norm, sum of ``|A_ij|^2``."""
    A = np.asarray(A)
    return float(np.sum(np.abs(A) ** 2))


def trace(A) -> complex:
    return complex(np.trace(np.asarray(A)))


def nonzero_eigenvalues(E: EigenDecomposition, rel_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Eigenvalues above the :func:`numeric_rank` threshold, descending."""
    lam = np.asarray(E.eigenvalues)
    if lam.size == 0:
        return lam
    threshold = rel_tol * max(1.0, float(np.max(np.abs(lam)))) * lam.size
    return lam[np.abs(lam) > threshold]


def relative_spread(values: np.ndarray) -> float:
    """``(max - min) / max|value|``; zero for empty input."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return 0.0
    top = float(np.max(np.abs(values)))
    if top == 0.0:
        return 0.0
    return float((np.max(values) - np.min(values)) / top)


@dataclass(frozen=True)
class TraceRankCheck:
    """Outcome of ``||T||^2 >= |tr T|^2 / rank T`` for a PSD operator."""

    hs_norm_sq: float
    trace: complex
    rank: int
    bound: float
    spread: float
    equality: bool

    @property
    def relative_gap(self) -> float:
        if self.bound == 0.0:
            return 0.0
        return (self.hs_norm_sq - self.bound) / self.bound


def trace_rank_check(A, equality_tol: float = 1e-9, rel_tol: float = DEFAULT_RANK_TOL) -> TraceRankCheck:
    """Evaluate the Hilbert-Schmidt / trace / rank inequality for PSD ``A``.

    Equality holds exactly when every nonzero eigenvalue is the same; it is
    declared when their relative spread is at most ``equality_tol``.
    """
    E = hermitian_eig(A)
    r = numeric_rank(E, rel_tol)
    tr = trace(A)
    norm_sq = hs_norm_sq(A)
    bound = abs(tr) ** 2 / r if r else 0.0
    spread = relative_spread(nonzero_eigenvalues(E, rel_tol))
    return TraceRankCheck(norm_sq, tr, r, bound, spread, r > 0 and spread <= equality_tol)
