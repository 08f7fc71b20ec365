"""Exception types raised by circline_lab."""


class CirclineError(Exception):
    """Base class for all library errors."""


class DegenerateSpeed(CirclineError):
    """The curve speed |γ'(t)| fell below the regularity threshold."""


class ZeroArea(CirclineError):
    pass


class NotSimple(CirclineError):
    """A self-intersection was detected where a simple curve is required."""


class RejectionExhausted(CirclineError):
    pass


class NotTangent(CirclineError):
    """A circline does not pass through the curve point tangentially."""


class AtCenter(CirclineError):
    pass


class CenterTooClose(CirclineError):
    pass


class OutsideRegion(CirclineError):
    pass


class NoConvergence(CirclineError):
    """The arc-halving search did not reach its stopping length.

    The partial iteration trace is attached as ``trace`` when available.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class CurvatureTooLarge(CirclineError):
    def __init__(self, message, t_argmax=None, kappa=None):
        super().__init__(message)
        self.t_argmax = t_argmax
        self.kappa = kappa


class NotContained(CirclineError):
    pass


class NotMonotone(CirclineError):
    pass


class TangentialIntersection(CirclineError):
    pass


class SpecParseError(CirclineError):
    """Curve-spec text could not be parsed.  Carries 1-based line/column."""

    def __init__(self, message, line=0, column=0):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
