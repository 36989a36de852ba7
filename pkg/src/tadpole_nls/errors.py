"""Exception types shared by the numerical modules."""


class TadpoleError(Exception):
    """Base class for all library errors."""


class DomainError(TadpoleError, ValueError):
    """An argument lies outside the admissible parameter range."""


class NoRootError(TadpoleError):
    """A bracketed root search had no sign change or did not converge."""


class ToleranceNotMet(TadpoleError):
    """A quadrature could not reach the requested tolerance.

    The best estimate and its error bound are kept on the exception so callers
    can decide whether the value is still usable.
    """

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(f"{message} (estimate={estimate!r}, error={error:.3e})")
        self.estimate = estimate
        self.error = error


class IntegrationError(TadpoleError):
    """An ODE integration failed to complete."""
