"""Exception hierarchy.

Input problems derive from :class:`ValidationError` (also a ``ValueError``);
broken internal invariants derive from :class:`InternalInvariantError`.
"""


class GenObsError(Exception):
    """Base class for all package errors."""


class ValidationError(GenObsError, ValueError):
    """An input violates a documented invariant."""


class NotSquare(ValidationError):
    pass


class NonFinite(ValidationError):
    pass


class NotHermitian(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class NotPositiveDefinite(ValidationError):
    pass


class ZeroVector(ValidationError):
    pass


class DimMismatch(ValidationError):
    pass


class SingularFrame(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class NotOrthonormal(ValidationError):
    pass


class DuplicateValues(ValidationError):
    pass


class DuplicateLabels(ValidationError):
    pass


class InvalidPartition(ValidationError):
    pass


class UnknownLabel(ValidationError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidState(ValidationError):
    pass


class InvalidTransitionMatrix(ValidationError):
    pass


class EnvelopeError(ValidationError):
    """A serialized document is malformed."""


class InternalInvariantError(GenObsError, RuntimeError):
    """A computation produced a value that valid inputs can never produce."""


class DegenerateDenominator(InternalInvariantError):
    pass


class SingularReconstruction(InternalInvariantError):
    pass


class InvalidDistribution(InternalInvariantError):
    pass


class NoWitnessFound(GenObsError):
    """No affinity violation above the threshold was found.

    ``best_gap`` holds the largest midpoint gap seen during the search.
    """

    def __init__(self, message, best_gap=0.0):
        super().__init__(message)
        self.best_gap = best_gap


class IndeterminateVerdict(GenObsError):
    """Candidate verification and the affinity search disagree.

    Raised when the largest affinity gap falls in the band between round-off
    and genuine nonlinearity, so neither verdict can be issued safely.
    """

    def __init__(self, message, gap=None):
        super().__init__(message)
        self.gap = gap
