"""Exception and warning types shared across the package."""


class EdgeSamplingError(Exception):
    """Base class for all errors raised by this package."""


class SelfLoopError(EdgeSamplingError):
    pass


class DuplicateEdgeError(EdgeSamplingError):
    pass


class NonPositiveWeightError(EdgeSamplingError):
    pass


class NodeOutOfRangeError(EdgeSamplingError):
    pass


class EmptyEdgeSetError(EdgeSamplingError):
    pass


class InvalidEdgeIdError(EdgeSamplingError):
    pass


class NotSymmetricError(EdgeSamplingError):
    pass


class DimensionMismatchError(EdgeSamplingError):
    pass


class BadBandwidthError(EdgeSamplingError):
    pass


class RangeTooSmallError(EdgeSamplingError):
    """Spectral range given to a polynomial filter does not cover the operator spectrum."""


class SizeLimitError(EdgeSamplingError):
    """Operator too large for a dense code path."""


class SizeTooLargeError(EdgeSamplingError):
    pass


class DisconnectedError(EdgeSamplingError):
    pass


class DegenerateEmbeddingError(EdgeSamplingError):
    pass


class KMismatchError(EdgeSamplingError):
    pass


class ParseError(EdgeSamplingError):
    """Malformed input file; carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class AsymmetricInputError(EdgeSamplingError):
    pass


class FormatError(EdgeSamplingError):
    pass


class RankDeficientWarning(UserWarning):
    """Fewer samples than basis vectors in a bandlimited least-squares fit."""
