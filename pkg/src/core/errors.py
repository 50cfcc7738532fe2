"""Error hierarchy for shocktrack"""

from typing import Any


class ShocktrackError(Exception):
    """Base class for all shocktrack errors"""


class InputError(ShocktrackError, ValueError):
    """A precondition was violated or an input could not be parsed"""


class ConvergenceError(ShocktrackError, RuntimeError):
    """An iterative solver did not converge

    Args:
        message: Human readable description
        diagnostics: Solver state at the time of failure
    """

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class InternalError(ShocktrackError, RuntimeError):
    """An internal consistency check failed"""


class SolverFailure(ShocktrackError):
    """An interaction could not be resolved; carries the event dump"""

    def __init__(self, message: str, event_dump: dict[str, Any]):
        super().__init__(message)
        self.event_dump = event_dump
