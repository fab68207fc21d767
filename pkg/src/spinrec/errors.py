"""Shared exception types."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; results cannot be trusted."""


class TruncationError(ValueError):
    """A series coefficient beyond the known truncation window was requested."""


class StokesLineError(RuntimeError):
    """A descent path ran into another critical point; perturb the phase."""
