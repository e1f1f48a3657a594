"""Exception hierarchy shared by the library and the command line."""


class ZigrankError(Exception):
    """Base class for all errors raised by zigrank."""


class ParseError(ZigrankError, ValueError):
    """Malformed input text (interval specs, bifiltration files, module JSON)."""


class ValidationError(ZigrankError, ValueError):
    """Well-formed input that violates a mathematical invariant."""


class GuardError(ZigrankError, RuntimeError):
    """A size guard for an exponential routine was exceeded."""


class FieldMismatchError(ValidationError):
    """Objects over different prime fields were combined."""
