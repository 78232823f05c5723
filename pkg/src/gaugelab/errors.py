"""Exception hierarchy.

Domain errors (points or paths touching an excluded set) and numerical
failures are kept apart so the CLI can map them to distinct exit codes.
"""


class GaugeLabError(Exception):
    """Base class for all library errors."""


class DomainError(GaugeLabError):
    """A quantity was requested where it is not defined."""


class OutsideDomain(DomainError):
    def __init__(self, point, patch, message=None):
        self.point = tuple(float(c) for c in point)
        self.patch = patch
        super().__init__(message or f"point {self.point} lies outside {patch}")


class OnSolenoidShell(DomainError):
    def __init__(self, point, radius):
        self.point = tuple(float(c) for c in point)
        self.radius = float(radius)
        super().__init__(
            f"field is not defined on the solenoid shell rho={self.radius} "
            f"(point {self.point})"
        )


class PathTouchesAxis(DomainError):
    pass


class FieldSingularOnSurface(DomainError):
    pass


class MultipleInterceptions(DomainError):
    pass


class NotClosed(GaugeLabError, ValueError):
    pass


class InvalidN(GaugeLabError, ValueError):
    pass


class NoConvergence(GaugeLabError):
    def __init__(self, message, estimate=None, est_error=None):
        self.estimate = estimate
        self.est_error = est_error
        super().__init__(message)
