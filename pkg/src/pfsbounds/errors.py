"""Exception hierarchy shared by the package."""


class PFSError(Exception):
    """Base class for all errors raised by pfsbounds."""


class ParseError(PFSError, ValueError):
    """Malformed instance file. ``line`` is 1-based, or None at end of input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InstanceError(PFSError, ValueError):
    """An instance or permutation violates its invariants."""


class GuardError(PFSError):
    """A computation was refused because its size exceeds a hard guard."""
