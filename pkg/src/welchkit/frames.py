"""Finite frames, Gram matrices and the Welch bounds.

For m unit vectors spanning an n-dimensional space, and every k >= 1,

    sum_{i,j} |<x_i, x_j>|^{2k}  >=  m^2 / binom(n+k-1, k)

with equality exactly when the lifted vectors x_i^{⊗k} form a tight frame
for Sym^k, i.e. when every nonzero eigenvalue of the Hadamard power G∘k
equals m / binom(n+k-1, k). Averaging the off-diagonal terms gives the
cross-correlation bound

    cmax^{2k}  >=  (m / binom(n+k-1, k) - 1) / (m - 1).

Inner products are conjugate-linear in the first argument throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg
from .errors import DomainError, FrameValidationError, InputError
from .symtensor import lift, sym_dim

UNIT_TOL = 1e-10
DEFAULT_TOL = 1e-8
DEFAULT_KMAX = 4
TIE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class FrameSet:
    """``m`` vectors in ``C^d``, stored as the rows of an ``(m, d)`` array.

    ``unit_norm=None`` detects the property; ``unit_norm=True`` asserts it
    and raises :class:`FrameValidationError` when some norm is off by more
    than 1e-10.
    """

    vectors: np.ndarray
    unit_norm: Optional[bool] = None

    def __post_init__(self):
        X = np.array(self.vectors, dtype=complex)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise InputError(f"frame must be a non-empty (m, d) array, got shape {X.shape}")
        if not np.all(np.isfinite(X)):
            raise InputError("frame has non-finite entries")
        X.setflags(write=False)
        object.__setattr__(self, "vectors", X)
        is_unit = bool(np.all(np.abs(np.linalg.norm(X, axis=1) - 1.0) <= UNIT_TOL))
        if self.unit_norm and not is_unit:
            raise FrameValidationError("frame claimed unit-norm but some vector norm differs from 1 by > 1e-10")
        if self.unit_norm is None:
            object.__setattr__(self, "unit_norm", is_unit)

    @property
    def m(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)

    def normalized(self) -> "FrameSet":
        norms = self.norms
        if np.any(norms == 0):
            raise FrameValidationError("cannot normalize a zero vector")
        return FrameSet(self.vectors / norms[:, None], unit_norm=True)

    def transformed(self, U) -> "FrameSet":
        """Apply the matrix ``U`` to every vector."""
        return FrameSet(self.vectors @ np.asarray(U).T, unit_norm=None)


def as_frame(X) -> FrameSet:
    return X if isinstance(X, FrameSet) else FrameSet(X)


# standard frames --------------------------------------------------------

def onb(n: int) -> FrameSet:
    return FrameSet(np.eye(n), unit_norm=True)


def mercedes() -> FrameSet:
    """Three real unit vectors in C^2 at pairwise angles of 120 degrees."""
    angles = np.pi / 2 + 2 * np.pi * np.arange(3) / 3
    return FrameSet(np.stack([np.cos(angles), np.sin(angles)], axis=1), unit_norm=True)


def sic_qubit() -> FrameSet:
    """The tetrahedral SIC in C^2: pairwise ``|<x_i, x_j>|^2 = 1/3``."""
    omega = np.exp(2j * np.pi / 3)
    rows = [[1.0, 0.0]]
    rows += [[1 / np.sqrt(3), np.sqrt(2 / 3) * omega**j] for j in range(3)]
    return FrameSet(np.array(rows), unit_norm=True)


def random_unit_frame(m: int, d: int, rng: np.random.Generator) -> FrameSet:
    """``m`` i.i.d. uniformly distributed unit vectors in ``C^d``."""
    Z = rng.standard_normal((m, d)) + 1j * rng.standard_normal((m, d))
    return FrameSet(Z / np.linalg.norm(Z, axis=1, keepdims=True), unit_norm=True)


# Gram side / metric side ---------------------------------------------------

def gram(X) -> np.ndarray:
    """``G[i, j] = <x_i, x_j>``."""
    V = as_frame(X).vectors
    return V.conj() @ V.T


def hadamard_power(G, k: int) -> np.ndarray:
    if k < 1:
        raise DomainError(f"Hadamard power needs k >= 1, got {k}")
    return np.asarray(G) ** k


def metric_operator(X) -> np.ndarray:
    """``sum_i x_i x_i^*`` acting on ``C^d``."""
    V = as_frame(X).vectors
    return V.T @ V.conj()


def lifted_metric_operator(X, k: int) -> np.ndarray:
    """``sum_i lift(x_i) lift(x_i)^*`` on Sym^k(C^d)."""
    L = lift(as_frame(X).vectors, k)
    return L.T @ L.conj()


def spanning_dim(X, rel_tol: float = linalg.DEFAULT_RANK_TOL) -> int:
    """Dimension of the span, as the numeric rank of the Gram matrix.

    The Gram matrix and the metric operator share their nonzero spectrum,
    so the rank is taken from whichever of the two is smaller.
    """
    X = as_frame(X)
    A = gram(X) if X.m <= X.d else metric_operator(X)
    return linalg.numeric_rank(linalg.hermitian_eig(A), rel_tol)


def _hadamard_spectrum(X: FrameSet, k: int) -> np.ndarray:
    D = sym_dim(X.d, k)
    A = hadamard_power(gram(X), k) if X.m <= D else lifted_metric_operator(X, k)
    return linalg.nonzero_eigenvalues(linalg.hermitian_eig(A))


# bounds -----------------------------------------------------------------

def welch_bound(m: int, n: int, k: int) -> float:
    """Right side ``m^2 / binom(n+k-1, k)`` of the frame-potential bound."""
    if m < 1 or n < 1 or k < 1:
        raise DomainError(f"welch_bound needs m, n, k >= 1, got ({m}, {n}, {k})")
    return m * m / sym_dim(n, k)


def cmax_bound(m: int, n: int, k: int) -> float:
    """Lower bound on ``cmax^{2k}``; negative values mean the bound is vacuous."""
    if n < 1 or k < 1:
        raise DomainError(f"cmax_bound needs n, k >= 1, got n={n}, k={k}")
    if m < 2:
        raise DomainError("cmax_bound is undefined for a single vector (m = 1)")
    return (m / sym_dim(n, k) - 1.0) / (m - 1)


def cmax_sq_bound(m: int, n: int, k: int) -> float:
    """The implied bound on ``cmax^2``: the k-th root of :func:`cmax_bound`, or -inf."""
    b = cmax_bound(m, n, k)
    return b ** (1.0 / k) if b >= 0 else float("-inf")


def frame_sums(X, k_max: int) -> np.ndarray:
    """``sum_{i,j} |<x_i, x_j>|^{2k}`` for k = 1..k_max."""
    A = np.abs(gram(X)) ** 2
    out = np.empty(k_max)
    P = np.ones_like(A)
    for k in range(k_max):
        P = P * A
        out[k] = P.sum()
    return out


# reports ----------------------------------------------------------------

@dataclass
class KReport:
    k: int
    sym_dim: int
    lhs_sum: float
    bound: float
    relative_slack: float
    nontrivial: bool
    tight: bool
    eigenvalue_spread: float
    cmax_bound: Optional[float]
    cmax_sq_bound: Optional[float]
    cmax_equality: bool


@dataclass
class WelchReport:
    m: int
    d: int
    n: int
    cmax: Optional[float]
    cmax_pair: Optional[tuple[int, int]]
    equiangular: bool
    per_k: list[KReport] = field(default_factory=list)

    def tight(self, k: int) -> bool:
        return self.per_k[k - 1].tight

    def to_dict(self) -> dict:
        per_k = []
        for r in self.per_k:
            row = dict(r.__dict__)
            if row["cmax_sq_bound"] is not None and not np.isfinite(row["cmax_sq_bound"]):
                row["cmax_sq_bound"] = None
            per_k.append(row)
        return {
            "m": self.m,
            "d": self.d,
            "n": self.n,
            "cmax": self.cmax,
            "cmax_pair": list(self.cmax_pair) if self.cmax_pair else None,
            "equiangular": self.equiangular,
            "per_k": per_k,
        }


def cross_correlation(X) -> tuple[Optional[float], Optional[tuple[int, int]], float]:
    """Max and min of ``|<x_i, x_j>|`` over i < j, with the first maximizing pair.

    Returns ``(None, None, 0.0)`` for a single vector.
    """
    X = as_frame(X)
    if X.m < 2:
        return None, None, 0.0
    iu, ju = np.triu_indices(X.m, 1)
    mags = np.abs(gram(X))[iu, ju]
    top = float(mags.max())
    # pairs equal up to rounding count as ties; row-major order is lexicographic
    pos = int(np.argmax(mags >= top - TIE_TOL * max(1.0, top)))
    return top, (int(iu[pos]), int(ju[pos])), float(top - mags.min())


def is_tight(X, k: int, n: Optional[int] = None, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Whether the order-k lifts of ``X`` form a tight frame for Sym^k of the span.

    Both the relative spread of the nonzero spectrum of G∘k and the
    distance of its mean from ``m / binom(n+k-1, k)`` must be within ``tol``.
    Returns the verdict and the spread.
    """
    X = as_frame(X)
    if n is None:
        n = spanning_dim(X)
    lam = _hadamard_spectrum(X, k)
    if lam.size == 0:
        return False, 0.0
    spread = linalg.relative_spread(lam)
    expected = X.m / sym_dim(n, k)
    common = float(np.mean(lam))
    return bool(spread <= tol and abs(common - expected) <= tol * expected), spread


def analyze(X, k_max: int = DEFAULT_KMAX, tol: float = DEFAULT_TOL) -> WelchReport:
    """Welch bounds, slacks and equality certificates for a unit-norm frame."""
    X = as_frame(X)
    if not X.unit_norm:
        raise FrameValidationError("analyze needs unit-norm vectors; use analyze_general")
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    m = X.m
    n = spanning_dim(X)
    cmax, pair, cspread = cross_correlation(X)
    equiangular = cspread <= tol
    sums = frame_sums(X, k_max)
    report = WelchReport(m=m, d=X.d, n=n, cmax=cmax, cmax_pair=pair, equiangular=equiangular)
    for k in range(1, k_max + 1):
        D = sym_dim(n, k)
        bound = welch_bound(m, n, k)
        lhs = float(sums[k - 1])
        tight, spread = is_tight(X, k, n=n, tol=tol)
        cb = cmax_bound(m, n, k) if m > 1 else None
        cb_sq = cmax_sq_bound(m, n, k) if m > 1 else None
        report.per_k.append(
            KReport(
                k=k,
                sym_dim=D,
                lhs_sum=lhs,
                bound=bound,
                relative_slack=(lhs - bound) / bound,
                nontrivial=m > D,
                tight=tight,
                eigenvalue_spread=spread,
                cmax_bound=cb,
                cmax_sq_bound=cb_sq,
                cmax_equality=bool(tight and equiangular and m > 1),
            )
        )
    return report


@dataclass
class GeneralKReport:
    k: int
    ratio: float
    bound: float
    relative_slack: float


@dataclass
class GeneralReport:
    m: int
    d: int
    n: int
    per_k: list[GeneralKReport] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"m": self.m, "d": self.d, "n": self.n, "per_k": [dict(r.__dict__) for r in self.per_k]}


def analyze_general(X, k_max: int = DEFAULT_KMAX) -> GeneralReport:
    """Norm-free form of the bounds for arbitrary nonzero vectors.

    ``sum |<x_i, x_j>|^{2k} / (sum ||x_i||^{2k})^2 >= 1 / binom(n+k-1, k)``.
    """
    X = as_frame(X)
    sq_norms = X.norms**2
    if np.any(sq_norms == 0):
        raise FrameValidationError("analyze_general needs nonzero vectors")
    n = spanning_dim(X)
    sums = frame_sums(X, k_max)
    report = GeneralReport(m=X.m, d=X.d, n=n)
    for k in range(1, k_max + 1):
        ratio = float(sums[k - 1] / np.sum(sq_norms**k) ** 2)
        bound = 1.0 / sym_dim(n, k)
        report.per_k.append(GeneralKReport(k, ratio, bound, (ratio - bound) / bound))
    return report


def dual_spectra(X) -> tuple[np.ndarray, np.ndarray]:
    """Nonzero eigenvalues (descending) of the Gram matrix and of the metric operator."""
    X = as_frame(X)
    g = linalg.nonzero_eigenvalues(linalg.hermitian_eig(gram(X)))
    f = linalg.nonzero_eigenvalues(linalg.hermitian_eig(metric_operator(X)))
    return g, f


def eigen_duality_check(X, tol: float = 1e-9) -> bool:
    g, f = dual_spectra(X)
    return g.shape == f.shape and bool(np.all(np.abs(g - f) <= tol))
