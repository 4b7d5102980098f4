"""Exception hierarchy shared by every module of the package."""


class SiegelError(Exception):
    """Base class for all package errors."""


class SizeMismatch(SiegelError):
    pass


class NotPositiveDefinite(SiegelError):
    pass


class Singular(SiegelError):
    pass


class NearSingularCocycle(SiegelError):
    """|det(CZ+D)| fell below the numerical floor."""


class StepUnderflow(SiegelError):
    """Finite-difference step too small to resolve in double precision."""


class BranchCut(SiegelError):
    """A principal-branch complex power is too close to its cut; resample."""


class TruncationFailure(SiegelError):
    pass


class TailBoundExceedsTol(SiegelError):
    pass


class UnsupportedWeight(SiegelError):
    pass


class NonIntegralCoefficient(SiegelError):
    pass


class InvalidPlan(SiegelError):
    pass
