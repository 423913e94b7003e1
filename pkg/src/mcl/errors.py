"""Exception types shared across the package."""


class MclError(Exception):
    """Base class for all errors raised by this package."""


class InputError(MclError, ValueError):
    """Malformed or incompatible input."""


class ResourceLimitError(MclError):
    """A search or enumeration would exceed its configured bound."""


class ConditionError(MclError):
    """The hypotheses an exact formula needs do not hold for the given input."""
