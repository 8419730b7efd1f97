"""Exception and warning classes shared across the package."""


class DispersionError(Exception):
    """Base class for all errors raised by :mod:`nsdispersion`."""


class DomainError(DispersionError, ValueError):
    """An input lies outside the domain of an operation.

    ``field`` names the offending input when there is a single culprit.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class RegimeError(DispersionError, ValueError):
    """The fluid state does not belong to the regime an operation requires."""


class ConsistencyError(DispersionError, ArithmeticError):
    """Two routes to the same quantity disagree beyond tolerance."""


class NumericalError(DispersionError, ArithmeticError):
    """An iterative method failed to converge."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class StabilityError(DispersionError, ValueError):
    """Time step too large for the explicit integrator."""

    def __init__(self, message, min_steps):
        super().__init__(message)
        self.min_steps = min_steps


class DatabaseError(DispersionError, ValueError):
    """Problem reading or validating a fluid database.

    ``locus`` is a human readable location such as ``"line 4, column 7"`` or
    ``"fluids[2].gamma"``.
    """

    def __init__(self, message, locus=None):
        super().__init__(f"{locus}: {message}" if locus else message)
        self.locus = locus


class DatabaseParseError(DatabaseError):
    pass


class DatabaseValidationError(DatabaseError):
    pass


class FitDegeneracyWarning(RuntimeWarning):
    """Exponential fit is ill-conditioned (near-degenerate frequencies)."""
