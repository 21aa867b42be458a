"""Exception hierarchy shared by every motent module."""


class MotentError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class RingMismatchError(MotentError, ValueError):
    pass


class PreconditionError(MotentError, ValueError):
    """An operation was called outside its domain (e.g. log of f with f(0) != 1)."""


class ClassSyntaxError(MotentError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class EnumerationCapError(MotentError, RuntimeError):
    """Raised instead of silently truncating an exhaustive enumeration."""


class CountingError(MotentError, ArithmeticError):
    """Point counts that are inconsistent (non-integral or negative closed-point counts)."""
