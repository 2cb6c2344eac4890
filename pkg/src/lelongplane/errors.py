"""Exception taxonomy shared by all modules and mapped to CLI exit codes."""


class PreconditionError(ValueError):
    """An operation's stated precondition does not hold for the given input."""


class VerificationError(Exception):
    """A certificate or report failed re-verification."""


class UnsupportedInstanceError(Exception):
    """The instance is valid but outside the scope this toolkit handles
    (e.g. non-rational intersection points, excluded configuration types)."""


class ParseError(ValueError):
    """An input file does not match its schema."""
