"""Recover a frame from its Gram matrix."""

from __future__ import annotations

import numpy as np

from . import linalg
from .errors import NotPSDError
from .frames import FrameSet

UNIT_DIAG_TOL = 1e-9


def frame_from_gram(G, rel_tol: float = linalg.DEFAULT_RANK_TOL) -> FrameSet:
    """Vectors ``x_1..x_m`` in ``C^r``, r = numeric rank of G, with ``<x_i, x_j> = G[i, j]``.

    With ``G = U diag(lam) U^*``, the rows of ``U[:, :r] sqrt(lam[:r])`` have
    ``G`` as their matrix of *linear-first* inner products; conjugating the
    rows converts that to the conjugate-first convention used here.
    Coordinates follow the eigenvalues in descending order. The result is
    only determined up to a common unitary.

    Raises
    ------
    NotPSDError
        If an eigenvalue is below ``-rel_tol * max eigenvalue``, or if G is
        numerically zero.
    """
    G = linalg.as_hermitian(G)
    lam, U = linalg.hermitian_eig(G)
    top = float(lam[0]) if lam.size else 0.0
    if top <= 0.0:
        raise NotPSDError("Gram matrix has no positive eigenvalue; no frame to build")
    if lam[-1] < -rel_tol * top:
        raise NotPSDError(f"Gram matrix is indefinite (min eigenvalue {lam[-1]:.3e}, max {top:.3e})")
    r = linalg.numeric_rank(linalg.EigenDecomposition(lam, U), rel_tol)
    lam = np.clip(lam[:r], 0.0, None)
    X = (U[:, :r] * np.sqrt(lam)).conj()

    diag = np.diagonal(G).real
    if np.all(np.abs(diag - 1.0) <= UNIT_DIAG_TOL):
        X = X / np.linalg.norm(X, axis=1, keepdims=True)
        return FrameSet(X, unit_norm=True)
    return FrameSet(X)
