"""Exception types raised by the factorizations and decompositions."""

from numpy.linalg import LinAlgError


class DimensionError(ValueError):
    """Operands do not conform."""


class FactorizationError(LinAlgError):
    """Base class for failures that occur at a specific elimination step.

    ``index`` is the 0-based step (or diagonal position) where it happened.
    """

    code = "error"

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NotPositiveDefiniteError(FactorizationError):
    code = "not-positive-definite"


class SingularMatrixError(FactorizationError):
    code = "singular"


class RankDeficiencyError(FactorizationError):
    code = "rank-deficient"


class StructuralSingularityError(FactorizationError):
    code = "structural-singularity"


class BreakdownError(FactorizationError):
    code = "breakdown"
