"""Exception types shared across the toolkit."""


class RingcertError(Exception):
    """Base class for all toolkit errors."""


class ModeMismatchError(RingcertError):
    """Operands live over different coefficient modes or variable sets."""


class UnsupportedModeError(RingcertError):
    """The requested operation is not defined for this coefficient mode."""


class StaleBasisError(RingcertError):
    """A supplied cached basis does not generate the same ideal as the generators."""


class PreconditionError(RingcertError):
    """A documented operation precondition was violated by the caller."""


class NonReducedError(PreconditionError):
    """An operation requiring reduced rings received a ring with a nilpotent."""


class CapExceededError(RingcertError):
    """A bounded search ran out of budget; callers usually convert this to
    an inconclusive certificate."""

    def __init__(self, message, caps=None):
        super().__init__(message)
        self.caps = dict(caps or {})


class ParseError(RingcertError):
    """Task-file or polynomial-text syntax error with position information."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col
