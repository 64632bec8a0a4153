class LomaxError(Exception):
    """Base class for errors raised by this package."""


class InvalidArgumentError(LomaxError, ValueError):
    """An argument is outside the domain of the operation."""


class PreconditionError(LomaxError, ValueError):
    """The input violates a structural precondition (e.g. connectivity)."""


class GenerationError(LomaxError, RuntimeError):
    """A random generator failed to produce a valid graph."""
