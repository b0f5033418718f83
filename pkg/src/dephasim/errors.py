"""Exception types shared across the package."""


class DephasimError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameter(DephasimError, ValueError):
    """An argument is outside its documented domain."""


class NormViolation(InvalidParameter):
    """Polarization amplitudes are not normalized."""


class WeightViolation(InvalidParameter):
    """Mixture weights do not sum to one (or fall outside (0, 1])."""


class GridViolation(InvalidParameter):
    """Time grid is empty, non-uniform, or does not start at zero."""


class PSDViolation(DephasimError):
    """A constructed density matrix has a significantly negative eigenvalue."""


class UnsupportedAnalytic(DephasimError):
    """No closed form is implemented for this (correlation, phase pair) combination."""


class QuadratureNonConverged(DephasimError):
    """Doubling the quadrature nodes moved the result by more than the tolerance."""


class ScenarioParseError(DephasimError):
    """A scenario file could not be parsed.

    Carries the 1-based line and column of the offending token when known.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", col {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
