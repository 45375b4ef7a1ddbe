"""Exception types shared across the workbench."""

from __future__ import annotations


class LoadcastError(Exception):
    """Base class for workbench-specific failures."""


class MeterFormatError(LoadcastError, ValueError):
    """A meter CSV violates the expected layout (header, dates, or cells)."""


class SingularRegressionError(LoadcastError, ValueError):
    """A regression design matrix is singular, e.g. the series is constant."""


class ConvergenceError(LoadcastError, RuntimeError):
    """The likelihood optimizer exhausted its iteration budget.

    ``best_fit`` carries the best parameter set found before giving up, so
    callers (the stepwise search in particular) can decide whether a
    partially converged fit is still usable.
    """

    def __init__(self, message: str, best_fit=None):
        super().__init__(message)
        self.best_fit = best_fit


class ConfigError(LoadcastError, ValueError):
    """A run-configuration document could not be parsed or validated."""


class PipelineError(LoadcastError, RuntimeError):
    """A pipeline stage failed; ``stage`` names the stage that raised."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
