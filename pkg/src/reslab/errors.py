"""Exception types raised by the numerical modules."""


class ReslabError(Exception):
    """Base class for all numerical failures reported by reslab."""


class DomainError(ReslabError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class AccuracyError(ReslabError):
    """No evaluation regime reached the requested accuracy.

    ``attained`` carries the best accuracy estimate that was reached, if any.
    """

    def __init__(self, message, attained=None):
        super().__init__(message)
        self.attained = attained


class PoleError(ReslabError):
    """A denominator vanished: the point is a pole of the evaluated quantity."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class TruncationError(ReslabError):
    """A partial-wave sum did not converge before the hard cap on l."""


class FitError(ReslabError, ValueError):
    """Samples are too few or too narrow to fit a growth exponent."""


class ContourError(ReslabError):
    """A counting contour could not be moved off a zero of the integrand."""


class NoConvergence(ReslabError):
    """Newton refinement failed to converge."""


class UnwrapError(ReslabError):
    """Phase unwrapping could not meet its step bound."""

    def __init__(self, message, l=None, r=None):
        super().__init__(message)
        self.l = l
        self.r = r
