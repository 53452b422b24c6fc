"""Numerical search for Welch-bound-equality frames.

The order-k frame potential ``sum_{i,j} |<x_i, x_j>|^{2k}`` is minimized
over products of unit spheres by Riemannian gradient descent: Euclidean
gradient, projection onto each sphere's tangent space, Armijo backtracking,
and retraction by renormalizing every vector.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError
from .frames import FrameSet, as_frame, gram, random_unit_frame, welch_bound

SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class DesignConfig:
    n: int
    m: int
    k: int = 1
    restarts: int = 20
    max_iters: int = 5000
    rel_slack_tol: float = 1e-7
    seed: int = 0
    initial_step: float = 0.1
    backtrack: float = 0.5
    min_step: float = 1e-16
    armijo: float = 1e-4

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise DomainError("n and k must be positive")
        if self.m < 2:
            raise DomainError("design needs m >= 2")
        if self.restarts < 1 or self.max_iters < 0:
            raise DomainError("restarts must be >= 1 and max_iters >= 0")
        if not self.rel_slack_tol > 0:
            raise DomainError("rel_slack_tol must be positive")
        if not (0 < self.backtrack < 1 and self.initial_step > 0 and self.min_step > 0):
            raise DomainError("invalid step controls")


@dataclass
class DesignResult:
    frame: FrameSet
    achieved_potential: float
    bound: float
    relative_slack: float
    iterations: int
    restart_index: int
    converged: bool
    history: Optional[list[float]] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "achieved_potential": self.achieved_potential,
            "bound": self.bound,
            "relative_slack": self.relative_slack,
            "iterations": self.iterations,
            "restart_index": self.restart_index,
            "converged": self.converged,
        }


def _potential(X: np.ndarray, k: int) -> float:
    A = np.abs(X.conj() @ X.T) ** 2
    return float(np.sum(A**k))


def frame_potential(X, k: int) -> float:
    """``sum_{i,j} |<x_i, x_j>|^{2k}``."""
    return _potential(as_frame(X).vectors, k)


def _wirtinger(X: np.ndarray, k: int) -> np.ndarray:
    G = X.conj() @ X.T
    W = np.abs(G) ** (2 * (k - 1)) * G.conj() if k > 1 else G.conj()
    return 2 * k * (W @ X)


def potential_gradient(X, k: int) -> np.ndarray:
    """Conjugate Wirtinger gradient of :func:`frame_potential`, one row per vector.

    Row i is ``2k sum_j |<x_i, x_j>|^{2k-2} conj(<x_i, x_j>) x_j``. The
    derivatives along the real and imaginary parts of a coordinate are
    twice its real and imaginary parts.
    """
    return _wirtinger(as_frame(X).vectors, k)


def tangent_gradient(X, k: int) -> np.ndarray:
    """Real gradient projected onto the tangent space of each unit sphere."""
    V = as_frame(X).vectors
    return _project(V, 2.0 * _wirtinger(V, k))


def _project(X: np.ndarray, R: np.ndarray) -> np.ndarray:
    radial = np.sum(X.conj() * R, axis=1).real
    return R - radial[:, None] * X


def _retract(Y: np.ndarray) -> np.ndarray:
    return Y / np.linalg.norm(Y, axis=1, keepdims=True)


def _descend(X: np.ndarray, config: DesignConfig, bound: float, record: bool):
    k = config.k
    value = _potential(X, k)
    history = [value] if record else None
    step = config.initial_step
    it = 0
    for it in range(1, config.max_iters + 1):
        if (value - bound) / bound <= config.rel_slack_tol:
            it -= 1
            break
        D = -_project(X, 2.0 * _wirtinger(X, k))
        slope = float(np.sum(np.abs(D) ** 2))
        if slope == 0.0:
            it -= 1
            break
        t = min(2.0 * step, 1e3)
        while True:
            Y = _retract(X + t * D)
            trial = _potential(Y, k)
            if trial <= value - config.armijo * t * slope:
                break
            t *= config.backtrack
            if t < config.min_step:
                Y = None
                break
        if Y is None:
            # no acceptable step left: stationary up to rounding
            break
        X, value, step = Y, trial, t
        if record:
            history.append(value)
    return X, value, it, history


def _run_restart(config: DesignConfig, index: int, bound: float, record: bool) -> DesignResult:
    rng = np.random.default_rng([config.seed & SEED_MASK, index])
    X0 = random_unit_frame(config.m, config.n, rng).vectors
    X, value, iters, history = _descend(X0, config, bound, record)
    slack = (value - bound) / bound
    return DesignResult(
        frame=FrameSet(X, unit_norm=True),
        achieved_potential=value,
        bound=bound,
        relative_slack=slack,
        iterations=iters,
        restart_index=index,
        converged=slack <= config.rel_slack_tol,
        history=history,
    )


def minimize(config: DesignConfig, workers: int = 1, record: bool = False) -> DesignResult:
    """Best of ``config.restarts`` independent descents.

    Restart i starts from Gaussian vectors drawn with seed ``(config.seed, i)``.
    The winner is the minimum by ``(achieved_potential, restart_index)``,
    so the result does not depend on ``workers``.
    """
    bound = welch_bound(config.m, config.n, config.k)
    indices = range(config.restarts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _run_restart(config, i, bound, record), indices))
    else:
        results = [_run_restart(config, i, bound, record) for i in indices]
    return min(results, key=lambda r: (r.achieved_potential, r.restart_index))
