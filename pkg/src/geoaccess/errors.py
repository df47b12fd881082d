"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input value, file, or configuration is rejected.

    The CLI maps this to exit code 1; genuine I/O failures (missing files,
    unwritable paths) surface as OSError and map to exit code 2.
    """
