"""Exception types shared across the package."""


class ArtifactError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ArtifactError, ValueError):
    """Argument outside the domain of a function."""


class PoleError(DomainError):
    """Argument sits on a pole (e.g. Gamma at a nonpositive integer)."""


class ConvergenceError(ArtifactError):
    """A series did not converge within its term cap."""


class SingularParamError(ArtifactError, ZeroDivisionError):
    """A parameter combination makes a coefficient denominator vanish."""


class DegenerateError(ArtifactError):
    """Operation needs a nonzero leading coefficient."""


class ConstraintError(ArtifactError):
    """Family or theorem parameter constraints are violated."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NonConvergence(ArtifactError):
    """Quadrature could not reach the requested tolerance.

    The best available estimate is kept in ``result`` (may be ``None``).
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ParityViolation(ArtifactError):
    """An integrand declared even/odd is not."""
