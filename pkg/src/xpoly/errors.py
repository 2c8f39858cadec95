"""Exception hierarchy shared by all xpoly modules."""


class XPolyError(Exception):
    """Base class for every error raised by xpoly."""


class ParameterViolation(XPolyError, ValueError):
    """Family parameters violate their ordering or positivity constraints."""


class DegenerateDegree(XPolyError):
    """Leading coefficient vanished (or nearly so) relative to the others.

    The offending polynomial is attached as ``poly`` so the caller can decide
    whether the reduced degree is acceptable.
    """

    def __init__(self, message, poly=None, expected_degree=None):
        super().__init__(message)
        self.poly = poly
        self.expected_degree = expected_degree


class DegreeZero(XPolyError, ValueError):
    """Root finding was requested for a constant polynomial."""


class NonConvergence(XPolyError):
    """The root finder hit ``max_iter`` with residuals above tolerance.

    ``partial`` holds the RootSet reached at the last iteration.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class CountMismatch(XPolyError):
    """Zero classification did not produce exactly n ordinary and l extra zeros."""

    def __init__(self, message, ordinary=None, extra=None):
        super().__init__(message)
        self.ordinary = ordinary
        self.extra = extra


class BranchCut(XPolyError, ValueError):
    """An asymptotic formula was evaluated on its branch cut."""
