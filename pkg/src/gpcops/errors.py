"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed textual input (graph files, CLI graph specs, policy specs)."""


class PreconditionError(ValueError):
    """An operation was called outside its contract."""


class ParameterError(PreconditionError):
    """Graph-family parameters outside their legal domain."""


class BudgetError(RuntimeError):
    """A solve would exceed the configured state budget."""

    def __init__(self, message: str, required_states: int | None = None):
        super().__init__(message)
        self.required_states = required_states


class WindowExhausted(RuntimeError):
    """A lifted move or lead reselection left the current cover window.

    Callers are expected to rebuild a larger window re-centered on the
    robber and resume play; all pawn indices are absolute, so rebuilding
    does not disturb game state.
    """
