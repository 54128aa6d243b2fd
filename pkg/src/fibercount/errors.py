"""Exception hierarchy shared by the library and the command line."""


class FiberError(Exception):
    """Base class for all errors raised by fibercount."""

    exit_code = 1


class InputError(FiberError, ValueError):
    """Malformed or out-of-range input."""

    exit_code = 2


class NotGraphicalError(FiberError, ValueError):
    """No simple graph realizes the requested property value."""

    exit_code = 3


class EstimationError(FiberError, ArithmeticError):
    """A step ratio was undefined or nonpositive along a construction path."""

    exit_code = 4

    def __init__(self, message: str, step: int | None = None):
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)
        self.step = step


class OracleSizeError(InputError):
    """Exhaustive enumeration requested for too many vertices."""

    exit_code = 5
