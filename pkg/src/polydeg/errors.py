"""Exception types shared across the package."""


class PolydegError(Exception):
    """Base class for all library errors."""


class EmptyPolytopeError(PolydegError):
    """An operation that needs a nonempty polytope received an empty one."""


class DimensionMismatchError(PolydegError):
    """Operands live in different ambient dimensions."""


class NotPointedError(PolydegError):
    """A pointed cone was required but the cone contains a line."""


class ArityMismatchError(PolydegError):
    """A mixed volume needs exactly as many polytopes as the ambient dimension."""


class InvalidOrderError(PolydegError):
    """Sectional-degree order outside 0..n-m."""


class ResolutionBudgetExceededError(PolydegError):
    """Stellar subdivision did not reach a smooth fan within the iteration cap."""


class FanNotCompatibleError(PolydegError):
    """The fan does not refine the normal fan of the polytope, or lacks a needed ray."""


class InvalidCycleError(PolydegError):
    """A cycle class failed the balancing condition."""


class InvalidInstanceError(PolydegError):
    """A determinantal-variety instance violates its shape invariants."""


class ParseError(PolydegError):
    """Polynomial text could not be parsed."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class InputError(PolydegError):
    """Bad user input (file contents, schema, flag combinations)."""


class InternalCheckError(PolydegError):
    """Two independent computation routes disagreed; indicates a bug."""


class NonIntegralResultError(InternalCheckError):
    """A degree formula produced a non-integer mixed volume."""


class DegenerateDirectionWarning(UserWarning):
    """A coordinate direction has an empty derivative polytope; the degree
    in that direction is zero."""


class EmptyEntryWarning(UserWarning):
    """A determinantal grid entry or auxiliary support is empty; the count
    collapses to zero."""
