"""Welch bounds, tight frames, symmetric tensor lifts and projective t-designs."""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    FrameValidationError,
    InputError,
    NotPSDError,
    RankDeficiencyError,
    WelchkitError,
)
from .frames import (
    FrameSet,
    WelchReport,
    analyze,
    analyze_general,
    cmax_bound,
    eigen_duality_check,
    gram,
    hadamard_power,
    welch_bound,
)
from .gramfactor import frame_from_gram
from .linalg import hermitian_eig, hs_norm_sq, numeric_rank, trace
from .symtensor import lift, lifted_gram, sym_dim
