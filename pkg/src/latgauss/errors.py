"""Exception and warning types shared across the package."""


class LatGaussError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LatGaussError, ValueError):
    """A parameter lies outside the mathematical domain of an operation."""


class RankDeficient(LatGaussError):
    """The given vectors are numerically linearly dependent."""


class NotFullRank(LatGaussError):
    """Operation requires a full-rank lattice (rank == ambient dimension)."""


class BudgetExceeded(LatGaussError):
    """Enumeration would visit more lattice points than the configured cap."""


class TolUnreachable(LatGaussError):
    """The radius certified for the requested tolerance exceeds the enumeration budget."""


class EpsilonTooLarge(LatGaussError):
    """epsilon >= 1: the improved-bound denominator 1 - epsilon is not positive."""


class VerificationFailure(LatGaussError):
    """One or more inequality checks failed; carries the failing records."""

    def __init__(self, message, records=(), report=None):
        super().__init__(message)
        self.records = tuple(records)
        self.report = report


class RegimeViolation(UserWarning):
    """Parameters lie outside the regime in which a bound's constant is justified.

    A soft flag: the value is still computed and returned.
    """
