"""Exception hierarchy shared by all modules."""


class EulerLimitError(Exception):
    """Base class for every error raised by this package."""


class DomainError(EulerLimitError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class DegenerateJumpError(DomainError):
    """A discontinuity was requested between states of equal density."""


class InconsistentStatesError(DomainError):
    """Two states do not satisfy the Rankine-Hugoniot relations."""


class NotADeltaWaveError(DomainError):
    """Riemann data of the pressureless system does not produce a delta wave."""


class PreconditionError(DomainError):
    """Input is valid in general but not for the requested construction."""


class ConvergenceError(EulerLimitError, ArithmeticError):
    """An iterative procedure failed to reach its tolerance."""


class BlowUpError(EulerLimitError, ArithmeticError):
    """A simulation produced a non-finite value or non-positive density."""

    def __init__(self, message, time=None, cell=None):
        super().__init__(message)
        self.time = time
        self.cell = cell
