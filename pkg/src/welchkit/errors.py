"""Exception types shared across welchkit."""


class WelchkitError(ValueError):
    """Base class for input and domain errors raised by the toolkit."""


class InputError(WelchkitError):
    """Malformed or non-finite input."""


class FrameValidationError(WelchkitError):
    """A frame violates a claimed property (unit norm, nonzero vectors, ...)."""


class DomainError(WelchkitError):
    """A quantity is undefined for the given parameters."""


class NotPSDError(WelchkitError):
    """A matrix that must be positive semidefinite has a negative eigenvalue."""


class RankDeficiencyError(WelchkitError):
    """Sampling points do not determine a polynomial uniquely."""

    def __init__(self, message: str, kernel_dim: int):
        super().__init__(message)
        self.kernel_dim = kernel_dim
