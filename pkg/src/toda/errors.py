"""Exception types shared across the engine.

Exit-code mapping used by the CLI: parse problems -> 2, precondition
failures -> 3, exhausted searches -> 4.
"""


class TodaError(Exception):
    """Base class for all engine errors."""


class InputError(TodaError):
    """Malformed or inconsistent input (bad index digits, shape mismatch...)."""


class ParseError(InputError):
    """A document failed validation; carries a path to the offending field."""

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class PreconditionError(TodaError):
    """A documented operation precondition does not hold."""


class SearchExhausted(TodaError):
    """An enumeration policy ran out of candidates without a verdict."""
