"""Exception hierarchy shared by all ratapprox modules."""


class RatApproxError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(RatApproxError, ValueError):
    """Invalid configuration (interval bounds, point counts, flag combinations)."""


class DataError(RatApproxError, ValueError):
    """Measurement data violates a structural requirement (duplicates, parity, ...)."""


class DomainError(RatApproxError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class KernelError(RatApproxError, RuntimeError):
    """A dense linear-algebra kernel failed to converge or produce a usable result."""


class SolveError(KernelError):
    """Linear solve failed; carries a condition estimate when available."""

    def __init__(self, message: str, cond: float | None = None):
        super().__init__(message)
        self.cond = cond


class PoleProximityError(RatApproxError, ArithmeticError):
    """Evaluation was requested at or numerically too close to a pole."""

    def __init__(self, x: float, message: str | None = None):
        super().__init__(message or f"evaluation at x={x!r} is too close to a pole")
        self.x = x


class DegenerateModelError(RatApproxError):
    """The realized pencil is singular (not regular) and defines no rational function."""


class ConversionError(RatApproxError):
    """Descriptor-to-standard-form conversion is not possible (E numerically singular)."""
