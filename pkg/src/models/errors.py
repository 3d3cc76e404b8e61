"""Error hierarchy shared by every package, and the CLI exit codes they map to."""

from enum import IntEnum


class ExitCode(IntEnum):
    OK = 0
    CHECK_FAILED = 1  # the command ran, but a checked identity or slope did not hold
    CONFIG_ERROR = 2
    VALIDATION_ERROR = 3
    NUMERIC_ERROR = 4
    IO_ERROR = 5


class LabError(Exception):
    """Root of all errors raised by this package."""


class ConfigurationError(LabError, ValueError):
    """Raised for an invalid lattice or run configuration."""


class FieldValidationError(LabError, ValueError):
    """Raised when a spectral field breaks one of its invariants.

    violations maps an invariant name ("finite", "zero-mean", "incompressible",
    "conjugate-symmetric", "in-lattice") to the offending integer triples.
    """

    def __init__(self, violations: dict[str, list[tuple[int, int, int]]]):
        self.violations = violations
        details = "; ".join(
            f"{name}: {triples}" for name, triples in violations.items() if triples
        )
        super().__init__(f"Spectral field failed validation ({details})")


class LatticeIndexError(LabError, IndexError):
    pass


class LatticeMismatchError(LabError, ValueError):
    pass


class OrderRangeError(LabError, IndexError):
    pass


class EvaluationError(LabError, KeyError):
    """A word references a generator index that has no matrix."""

    def __init__(self, index: int, available: int):
        self.index = index
        super().__init__(
            f"Generator U{index} requested but only {available} matrices were given"
        )

    def __str__(self) -> str:
        return self.args[0]


class PolynomialFormatError(LabError, ValueError):
    pass


class NumericError(LabError, ArithmeticError):
    pass


class IntegrationDivergenceError(NumericError):
    def __init__(self, step: int, time: float):
        self.step = step
        self.time = time
        super().__init__(f"Non-finite values at step {step} (t={time:g})")
