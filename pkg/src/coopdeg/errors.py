"""Exception hierarchy shared by every module."""


class GameError(Exception):
    """Base class for all errors raised by coopdeg."""


class DomainError(GameError, ValueError):
    """An argument is outside the domain of the operation."""


class SizeGuardError(GameError):
    """An enumeration-based operation was asked to run on too many players.

    Wrap the call in :func:`coopdeg.game.relaxed_size_guards` (``--force`` on
    the command line) to lift the soft limits.
    """

    def __init__(self, operation, n, limit):
        self.operation = operation
        self.n = n
        self.limit = limit
        super().__init__(
            f"size guard: {operation} enumerates coalitions and is limited to "
            f"n <= {limit} players (got n = {n}); pass --force to override"
        )


class ValidationError(GameError, ValueError):
    """A game description violates a backend invariant."""


class EmptyLeastCore(GameError):
    """The game admits no imputation, so its least core is empty."""


class OracleMismatch(GameError):
    """A fixed-parameter routine disagreed with its brute-force oracle."""


class InvariantViolation(GameError):
    """An internal guarantee failed; this signals a bug, not bad input."""
