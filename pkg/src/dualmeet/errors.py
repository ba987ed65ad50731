"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when caller-supplied values violate a documented precondition."""


class UnsupportedFormatError(InputError):
    """Raised when an operation only defined for symmetric formats gets an
    asymmetric one."""


class ConsistencyError(RuntimeError):
    """Raised when two computation routes that must agree do not."""
