"""Exception hierarchy.

Errors that signal a violated mathematical expectation (rather than bad
input) derive from :class:`ConsistencyError`.
"""


class TraceError(Exception):
    """Base class for every error raised by this package."""


class OutOfWindow(TraceError):
    """A coefficient beyond the known truncation window was requested."""


class ZeroLeadingTerm(TraceError, ZeroDivisionError):
    """Series inversion of something that vanishes throughout its window."""


class UnsupportedDiscriminant(TraceError, ValueError):
    """The discriminant is not admissible for the requested level."""


class UnsupportedLevel(TraceError, ValueError):
    pass


class Inconsistent(TraceError):
    """Affine linear system without solution."""


class PrecisionExceeded(TraceError):
    """Numerical evaluation hit its term cap before the error bound closed."""


class ConsistencyError(TraceError):
    """Internal mathematical consistency check failed (a bug, not bad input)."""


class NonIntegralResult(ConsistencyError):
    pass


class NoSolution(ConsistencyError):
    pass


class NonTrivialKernel(ConsistencyError):
    pass


class InconsistentRepresentations(ConsistencyError):
    pass


class LiftNotFound(ConsistencyError):
    pass


class NotNearInteger(ConsistencyError):
    pass
