"""Exception types shared across the package."""


class ArgumentError(ValueError):
    """Invalid input (composite modulus, out-of-range parameter, ...)."""


class ResourceError(RuntimeError):
    """A configured size cap would be exceeded."""

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap
