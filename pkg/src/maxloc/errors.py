"""Exception hierarchy for maxloc."""


class MaxlocError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(MaxlocError, ValueError):
    """Argument outside the region where an evaluation is valid."""


class NearSingularityError(DomainError):
    """Point too close to a removable singularity of a closed form."""


class NoSignChangeError(MaxlocError, ValueError):
    pass


class NonConvergenceError(MaxlocError, RuntimeError):
    pass


class BadSeedError(MaxlocError, ValueError):
    """Seed bracket does not carry certified (+, -) derivative signs."""


class UndecidableError(MaxlocError, RuntimeError):
    """A derivative sign could not be certified after all tightenings."""


class NonconvexPolygonError(MaxlocError, ValueError):
    pass


class DegenerateTriangleError(MaxlocError, ValueError):
    pass


class ShiftTooLargeError(MaxlocError, ValueError):
    pass


class TooFewNeighborsError(MaxlocError, ValueError):
    pass


class UnsolvedFieldError(MaxlocError, ValueError):
    pass


class UnsupportedProblemError(MaxlocError, ValueError):
    pass
