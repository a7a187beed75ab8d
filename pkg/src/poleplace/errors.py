"""Exception types shared across the package."""


class PolePlaceError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(PolePlaceError):
    """An eigenstructure or matrix fails a structural invariant."""


class NotReachableError(PolePlaceError):
    """The pair (A, B) is not reachable (or loses rank at some shift)."""


class SingularMatrixError(PolePlaceError):
    """A matrix that must be inverted is singular to working precision.

    Carries the offending condition number when available; optimizers treat
    this as a resample signal rather than a fatal failure.
    """

    def __init__(self, message, cond=None):
        super().__init__(message)
        self.cond = cond


class ChainConsistencyError(PolePlaceError):
    """A supplied chain set violates the defining chain relations."""


class ParseError(PolePlaceError):
    """A system or parameter file does not match the documented schema."""
