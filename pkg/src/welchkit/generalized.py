"""Weighted point sets on CP^{n-1}, Haar sampling and projective t-designs.

A discrete measure ``mu = sum_i w_i delta_{x_i} / sum_j w_j`` has order-k
metric operator ``F_k = sum_i w_i lift(x_i) lift(x_i)^* / sum w`` on
Sym^k(C^n), with unit trace and squared norm

    ||F_k||^2 = sum_{i,l} w_i w_l |<x_i, x_l>|^{2k} / (sum w)^2
              >= 1 / binom(n+k-1, k).

Equality for every k <= t (F_k = I / binom(n+k-1, k)) makes the point set a
projective t-design. Haar measure attains equality for every k.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, FrameValidationError, InputError
from .frames import FrameSet, as_frame, spanning_dim
from .symtensor import lift, sym_dim

UNIT_TOL = 1e-10
SEED_MASK = (1 << 64) - 1
DEFAULT_CHUNK = 8192


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Unit vectors ``points`` (rows) with non-negative ``weights``."""

    points: np.ndarray
    weights: np.ndarray
    total: float = field(init=False)

    def __post_init__(self):
        P = np.array(self.points, dtype=complex)
        if P.ndim == 1:
            P = P.reshape(1, -1)
        w = np.array(self.weights, dtype=float).reshape(-1)
        if P.ndim != 2 or P.shape[0] != w.size or P.shape[0] == 0:
            raise InputError("need one weight per point and at least one point")
        if not (np.all(np.isfinite(P)) and np.all(np.isfinite(w))):
            raise InputError("measure has non-finite entries")
        if np.any(np.abs(np.linalg.norm(P, axis=1) - 1.0) > UNIT_TOL):
            raise FrameValidationError("measure support must consist of unit vectors")
        if np.any(w < 0):
            raise InputError("weights must be non-negative")
        total = float(w.sum())
        if total <= 0:
            raise InputError("at least one weight must be positive")
        P.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", P)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "total", total)

    @classmethod
    def uniform(cls, X) -> "DiscreteMeasure":
        X = as_frame(X)
        return cls(X.vectors, np.ones(X.m))

    @property
    def n(self) -> int:
        return self.points.shape[1]

    @property
    def probabilities(self) -> np.ndarray:
        return self.weights / self.total

    def average(self, values) -> complex:
        """Integral of a function given by its values at the points."""
        return np.sum(self.probabilities * np.asarray(values))


# Haar sampling ----------------------------------------------------------

def _haar_rows(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    Z = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return Z / np.linalg.norm(Z, axis=1, keepdims=True)


class HaarSampler:
    """Deterministic stream of Haar-random unit vectors in ``C^n``.

    Vectors are generated in blocks of ``block`` draws, block ``b`` coming
    from its own substream keyed by ``(seed, b)``; the i-th vector of the
    stream is therefore the same however the draws are batched.
    """

    def __init__(self, n: int, seed: int = 0, block: int = 1024):
        if n < 1:
            raise DomainError("n must be >= 1")
        self.n = n
        self.seed = seed & SEED_MASK
        self.block = block
        self.counter = 0
        self._cache_index = -1
        self._cache = None

    def _block(self, b: int) -> np.ndarray:
        if b != self._cache_index:
            rng = np.random.default_rng([self.seed, 0, b])
            self._cache = _haar_rows(rng, self.block, self.n)
            self._cache_index = b
        return self._cache

    def sample(self) -> np.ndarray:
        b, i = divmod(self.counter, self.block)
        self.counter += 1
        return self._block(b)[i].copy()

    def samples(self, count: int) -> np.ndarray:
        out = np.empty((count, self.n), dtype=complex)
        filled = 0
        while filled < count:
            b, i = divmod(self.counter, self.block)
            take = min(self.block - i, count - filled)
            out[filled : filled + take] = self._block(b)[i : i + take]
            filled += take
            self.counter += take
        return out


def haar_sample(sampler: HaarSampler) -> np.ndarray:
    return sampler.sample()


@dataclass(frozen=True)
class MCEstimate:
    estimate: float
    stderr: float
    samples: int
    exact: Optional[float] = None

    def z_score(self, target: Optional[float] = None) -> float:
        target = self.exact if target is None else target
        return abs(self.estimate - target) / self.stderr if self.stderr > 0 else float("inf")

    def to_dict(self) -> dict:
        return dict(estimate=self.estimate, stderr=self.stderr, samples=self.samples, exact=self.exact)


def _chunk_sums(n: int, k: int, seed: int, chunk: int, size: int, y: Optional[np.ndarray]):
    rng = np.random.default_rng([seed, 1, chunk])
    x = _haar_rows(rng, size, n)
    other = _haar_rows(rng, size, n) if y is None else y[None, :]
    g = np.abs(np.sum(x.conj() * other, axis=1)) ** (2 * k)
    return float(g.sum()), float(np.sum(g * g))


def _mc_mean(n, k, samples, seed, chunk_size, workers, y=None) -> MCEstimate:
    if samples < 1:
        raise DomainError("need at least one sample")
    seed &= SEED_MASK
    sizes = [chunk_size] * (samples // chunk_size)
    if samples % chunk_size:
        sizes.append(samples % chunk_size)
    jobs = list(enumerate(sizes))

    def run(job):
        c, size = job
        return _chunk_sums(n, k, seed, c, size, y)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    # fixed accumulation order by chunk index
    s1 = s2 = 0.0
    for a, b in parts:
        s1 += a
        s2 += b
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0) * samples / (samples - 1) if samples > 1 else 0.0
    return MCEstimate(mean, float(np.sqrt(var / samples)), samples, 1.0 / sym_dim(n, k))


def mc_coherence_integral(
    n: int, k: int, samples: int, seed: int = 0, chunk_size: int = DEFAULT_CHUNK, workers: int = 1
) -> MCEstimate:
    """Monte-Carlo estimate of the Haar double integral of ``|<x, y>|^{2k}``.

    Uses ``samples`` independent pairs. The exact value ``1/binom(n+k-1, k)``
    is attached for comparison. Results depend only on
    ``(n, k, samples, seed, chunk_size)``.
    """
    if n < 1 or k < 0:
        raise DomainError("need n >= 1 and k >= 0")
    return _mc_mean(n, k, samples, seed, chunk_size, workers)


def mc_haar_average(y, k: int, samples: int, seed: int = 0, chunk_size: int = DEFAULT_CHUNK) -> MCEstimate:
    """Monte-Carlo Haar integral of ``x -> |<x, y>|^{2k}`` for a fixed unit ``y``."""
    y = np.asarray(y, dtype=complex)
    return _mc_mean(y.size, k, samples, seed, chunk_size, 1, y=y)


# weighted frames ----------------------------------------------------------

def measure_potential(mu: DiscreteMeasure, k: int) -> float:
    """``sum_{i,l} w_i w_l |<x_i, x_l>|^{2k} / (sum w)^2``."""
    p = mu.probabilities
    A = np.abs(mu.points.conj() @ mu.points.T) ** (2 * k)
    return float(p @ A @ p)


def measure_bound(mu: DiscreteMeasure, k: int) -> float:
    """``1/binom(n+k-1, k)`` with n the spanning dimension of the weighted support."""
    support = mu.points[mu.weights > 0]
    return 1.0 / sym_dim(spanning_dim(FrameSet(support)), k)


def generalized_metric(mu: DiscreteMeasure, k: int) -> np.ndarray:
    """Order-k metric operator ``sum_i p_i lift(x_i) lift(x_i)^*`` on Sym^k(C^n)."""
    L = lift(mu.points, k)
    return (L.T * mu.probabilities) @ L.conj()


@dataclass
class DesignLevel:
    k: int
    sym_dim: int
    max_deviation: float
    exact_pass: bool
    potential: float
    mc_consistent: Optional[bool] = None
    mc_worst_z: Optional[float] = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class TDesignReport:
    n: int
    t: int
    levels: list[DesignLevel]

    @property
    def verdict(self) -> bool:
        return all(level.exact_pass for level in self.levels)

    def to_dict(self) -> dict:
        return {"n": self.n, "t": self.t, "verdict": self.verdict, "levels": [lv.to_dict() for lv in self.levels]}


def tdesign_check(
    mu: DiscreteMeasure,
    t: int,
    tol: float = 1e-8,
    mc_probes: int = 4,
    mc_samples: int = 20000,
    seed: int = 0,
    include_zero: bool = False,
) -> TDesignReport:
    """Check whether ``mu`` is a projective t-design on CP^{n-1}.

    Level k passes when ``max |F_k - I/binom(n+k-1, k)|`` is at most
    ``tol``; the verdict requires every level 1..t. As an independent
    cross-check, for ``mc_probes`` random unit ``y`` the weighted average of
    ``|<x, y>|^{2k}`` is compared with a Monte-Carlo Haar integral of the same
    function, within 3 standard errors. The cross-check is reported but does
    not enter the verdict. Set ``mc_probes=0`` to skip it.
    """
    if t < 1:
        raise DomainError("t must be >= 1")
    n = mu.n
    probe_rng = np.random.default_rng([seed & SEED_MASK, 2])
    probes = _haar_rows(probe_rng, mc_probes, n) if mc_probes else np.zeros((0, n), complex)
    levels = []
    for k in range(0 if include_zero else 1, t + 1):
        D = sym_dim(n, k)
        F = generalized_metric(mu, k)
        dev = float(np.max(np.abs(F - np.eye(D) / D)))
        level = DesignLevel(k, D, dev, dev <= tol, measure_potential(mu, k))
        if mc_probes:
            zs = []
            for r, y in enumerate(probes):
                avg = float(mu.average(np.abs(mu.points.conj() @ y) ** (2 * k)))
                est = mc_haar_average(y, k, mc_samples, seed=(seed + 7919 * (r + 1) + k) & SEED_MASK)
                zs.append(est.z_score(avg) if est.stderr > 0 else (0.0 if abs(avg - est.estimate) < 1e-12 else np.inf))
            level.mc_worst_z = float(max(zs))
            level.mc_consistent = bool(level.mc_worst_z <= 3.0)
        levels.append(level)
    return TDesignReport(n, t, levels)
