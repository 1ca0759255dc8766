"""Exception types shared across the package."""


class EllrankError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(EllrankError):
    """Invalid user input: malformed tables, inconsistent specs, bad config."""


class LiftRangeError(EllrankError):
    """A mod-p quantity fell outside the integer range its precondition promised."""


class InternalInvariantError(EllrankError):
    """A mathematical invariant the pipeline guarantees was violated; a bug, not bad input."""
