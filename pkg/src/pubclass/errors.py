"""Exception hierarchy shared across the toolkit.

Exit-code mapping used by the command line front end: UsageError -> 1,
DataError -> 2, anything else -> 3.
"""


class PubclassError(Exception):
    """Base class for all toolkit errors."""


class UsageError(PubclassError):
    """Bad invocation: unknown flags, missing arguments, invalid parameter values."""


class DataError(PubclassError):
    """Malformed or inconsistent input data."""

    def __init__(self, message, path=None, line=None):
        if path is not None and line is not None:
            message = f"{path}:{line}: {message}"
        elif path is not None:
            message = f"{path}: {message}"
        super().__init__(message)
        self.path = path
        self.line = line
