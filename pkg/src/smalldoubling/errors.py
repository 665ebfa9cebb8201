"""Exception types raised across the package."""


class SmallDoublingError(Exception):
    """Base class for all package errors."""


class FamilyMismatchError(SmallDoublingError, TypeError):
    """An element does not belong to the group it was used with."""


class UndecidedOrderError(SmallDoublingError):
    """The Magnus truncation cap was reached before two words separated."""


class BallCapExceeded(SmallDoublingError):
    """Ball generation produced more elements than the configured cap."""


class HypothesisError(SmallDoublingError, ValueError):
    """A theorem's hypothesis does not hold for the given input."""


class PreconditionError(SmallDoublingError, ValueError):
    """An operation was called outside its domain."""


class UnsupportedVersion(SmallDoublingError, ValueError):
    """A certificate or corpus carries a schema version we cannot read."""


class CounterexampleFound(SmallDoublingError):
    """A checked theorem claim failed; ``record`` is a self-contained description."""

    def __init__(self, message, record):
        super().__init__(message)
        self.record = record
