"""Exception hierarchy shared by the library and the command line."""


class ArgqError(Exception):
    """Base class for every error raised by this package."""


class InputError(ArgqError, ValueError):
    """Malformed or inconsistent input to a library call."""


class ParseError(InputError):
    """Text input that does not follow the expected grammar."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResourceLimitError(ArgqError):
    """A documented size cap was exceeded."""


class ContractError(ArgqError):
    """A construction or conversion was asked to violate its own invariant."""
