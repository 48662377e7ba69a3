"""
Exception hierarchy shared by every package.
"""

from typing import Optional

import numpy as np


class CalibrationError(Exception):
    """Base class for all errors raised by this project."""

    pass


class InvalidInputError(CalibrationError):
    """Input data violates a documented precondition."""

    pass


class InvalidSpecError(CalibrationError):
    """A specification object (design, learner, model) is invalid."""

    pass


class DegenerateStratumError(CalibrationError):
    """A stratum (or a stratum-arm cell) is too small or lacks an arm."""

    def __init__(self, message: str, stratum: Optional[int] = None):
        super().__init__(message)
        self.stratum = stratum


class InsufficientDfError(DegenerateStratumError):
    """A stratum has n_[k] <= r_[k] + 1, so its df factor is undefined."""

    pass


class NonConvergenceError(CalibrationError):
    """The dual solver ran out of iterations or stalled."""

    def __init__(
        self,
        message: str,
        last_iterate: np.ndarray,
        residual: float,
        iterations: int,
    ):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual
        self.iterations = iterations


class InfeasibleDirectionError(CalibrationError):
    """The line search could not keep the iterate inside the domain of rho."""

    pass


class InferenceError(CalibrationError):
    """The estimated total variance is not positive."""

    def __init__(self, message: str, components: Optional[dict] = None):
        super().__init__(message)
        self.components = components or {}


class DataParseError(CalibrationError):
    """A CSV cell could not be parsed, or the file is unusable."""

    def __init__(
        self, message: str, row: Optional[int] = None, column: Optional[str] = None
    ):
        super().__init__(message)
        self.row = row
        self.column = column


class EmptyTrialError(InvalidInputError):
    """Every unit was removed."""

    pass


class ConfigError(CalibrationError):
    """A command-line or config-file setting is invalid."""

    pass
