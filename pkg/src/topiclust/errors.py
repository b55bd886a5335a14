"""Shared exception types."""


class InvalidArgumentError(ValueError):
    """An operation received arguments that violate its preconditions."""


class DatasetFormatError(ValueError):
    """A dataset file is malformed (bad JSON, bad record, dimension mismatch)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ThresholdEstimationError(RuntimeError):
    """Automatic threshold estimation failed; a manual threshold is required."""


class MetricUndefinedError(ArithmeticError):
    """A metric formula is undefined for the given inputs (e.g. totalSim == minSim)."""
