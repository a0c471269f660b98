"""Exception hierarchy shared by every module.

The CLI maps any :class:`LrsPirError` to exit code 1 and prints the class name.
"""


class LrsPirError(Exception):
    """Base class for domain errors."""


class NotPrime(LrsPirError):
    pass


class NotIrreducible(LrsPirError):
    pass


class InvalidParameter(LrsPirError, ValueError):
    pass


class Singular(LrsPirError):
    pass


class RankDeficient(LrsPirError):
    pass


class BlockMismatch(LrsPirError):
    pass


class DimensionMismatch(LrsPirError):
    pass


class InvalidDimension(LrsPirError):
    pass


class InvalidK(InvalidDimension):
    pass


class TooManyGroups(LrsPirError):
    pass


class FieldTooSmall(LrsPirError):
    pass


class ConstructionFailed(LrsPirError):
    pass


class Undecodable(LrsPirError):
    pass


class Inconsistent(LrsPirError):
    pass


class Uncorrectable(LrsPirError):
    def __init__(self, message, phase=None):
        super().__init__(message)
        self.phase = phase


class BudgetExceeded(LrsPirError):
    pass


class CollusionTooLarge(LrsPirError):
    pass


class IndexOutOfRange(LrsPirError, IndexError):
    pass


class SingularSupport(LrsPirError):
    pass


class MissingRound(LrsPirError):
    pass


class RetrievalFailed(LrsPirError):
    def __init__(self, message, iteration=None):
        super().__init__(message)
        self.iteration = iteration


class FormatError(LrsPirError):
    """Malformed descriptor, matrix or transcript text."""
