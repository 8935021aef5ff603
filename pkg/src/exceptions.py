"""Custom exception classes for the excursion toolkit.

This module defines a hierarchy of exceptions so callers (and the CLI) can
tell bad input apart from numerical trouble and map each to an exit code.
"""

from typing import Any


class ExcursionError(Exception):
    """Base exception for all toolkit errors."""

    pass


class DomainError(ExcursionError, ValueError):
    """Exception raised when an argument lies outside a function's domain.

    This includes Hermite orders below -1, stable indices outside (0, 2)
    and dimension indices outside [0, N].
    """

    pass


class PreconditionError(ExcursionError):
    """Exception raised when an operation's precondition does not hold.

    This includes rank violations and grids without recorded provenance.
    """

    pass


class InputError(ExcursionError, ValueError):
    """Exception raised when related inputs do not fit together."""

    pass


class UnsupportedDimensionError(ExcursionError):
    """Exception raised when an operation is called in a dimension it does not cover."""

    def __init__(self, operation: str, dimension: int, supported: str):
        self.operation = operation
        self.dimension = dimension
        super().__init__(f"{operation} supports {supported}, got N={dimension}")


class ConfigError(ExcursionError):
    """Exception raised when configuration is invalid or missing.

    The optional line number points at the offending line of a config file.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class NumericalError(ExcursionError):
    """Exception raised when a numerical procedure fails.

    Carries a diagnostics dict (tolerances, attempts, last estimate) for the report.
    """

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class DegenerateSpecError(NumericalError):
    """Exception raised for singular spectral matrices or non-positive variances."""

    pass


class QuadratureError(NumericalError):
    """Exception raised when adaptive quadrature does not converge."""

    pass


class SimulationError(NumericalError):
    """Exception raised when a field cannot be simulated.

    Typically a covariance whose circulant embedding has significantly
    negative eigenvalues.
    """

    pass


class ExperimentError(ExcursionError):
    """Exception raised when too many replicates of an experiment failed."""

    def __init__(self, failed: int, total: int):
        self.failed = failed
        self.total = total
        super().__init__(f"{failed} of {total} replicates failed")
