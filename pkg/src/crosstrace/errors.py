"""Exception types shared across the engine."""


class TraceError(Exception):
    """Base class for all crosstrace errors."""


class NotFoundError(TraceError):
    """An id does not resolve to a known element, view, link or marker."""


class InvalidArgumentError(TraceError):
    """An argument violates an operation's precondition."""


class InvalidStateError(TraceError):
    """The session is not in a state that allows the requested operation."""


class InvalidPathError(TraceError):
    """A path object is empty or otherwise unusable."""


class GenerationFailedError(TraceError):
    """Dataset generation exhausted its retry budget.

    Carries diagnostics about the failed attempts.
    """

    def __init__(self, message: str, attempts: int, diagnostics: list[str]):
        super().__init__(message)
        self.attempts = attempts
        self.diagnostics = diagnostics


class ReplayError(TraceError):
    """A scripted command could not be applied.

    ``index`` is the zero-based position of the offending command.
    """

    def __init__(self, message: str, index: int):
        super().__init__(f"command {index}: {message}")
        self.index = index
