import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from errors import InvalidInputError, InvalidSpecError


@enum.unique
class LearnerKind(str, enum.Enum):
    """Regression learners available for proxy construction."""

    OLS = "ols"
    RIDGE = "ridge"
    KNN = "knn"
    TREE = "tree"
    BAGGED_TREES = "bagged-trees"


@dataclass(frozen=True)
class LearnerSpec:
    """A learner kind plus its hyperparameters."""

    kind: LearnerKind = LearnerKind.OLS
    ridge_penalty: float = 1.0
    n_neighbors: int = 10
    max_depth: int = 6
    min_leaf_size: int = 5
    n_trees: int = 25
    bootstrap: bool = True
    ridge_fallback: bool = False
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", LearnerKind(self.kind))
        if self.ridge_penalty < 0:
            raise InvalidSpecError("ridge_penalty must be >= 0")
        for name in ("n_neighbors", "max_depth", "min_leaf_size", "n_trees"):
            if getattr(self, name) < 1:
                raise InvalidSpecError(f"{name} must be >= 1")


def as_design_matrix(x) -> np.ndarray:
    """Coerce covariates to a finite float matrix of shape (n, p)."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    if x.ndim != 2:
        raise InvalidInputError(f"Covariates must be a matrix, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("Covariates contain non-finite values")
    return x


class FittedModel(ABC):
    """An immutable fitted regression function."""

    def __init__(self, n_features: int, n_train: int):
        self.n_features = n_features
        self.n_train = n_train

    def predict(self, x) -> np.ndarray:
        """
        Predict one value per row of x.

        Raises:
            InvalidInputError: If the column count differs from training.
        """
        x = as_design_matrix(x)
        if x.shape[1] != self.n_features:
            raise InvalidInputError(
                f"Model was fit on {self.n_features} covariates, got {x.shape[1]}"
            )
        predictions = np.asarray(self._predict(x), dtype=float).reshape(-1)
        if not np.all(np.isfinite(predictions)):
            raise InvalidInputError("Learner produced non-finite predictions")
        return predictions

    @abstractmethod
    def _predict(self, x: np.ndarray) -> np.ndarray:
        """Predict on validated covariates."""


class Learner(ABC):
    """Base class for all regression learners."""

    def __init__(self, spec: LearnerSpec):
        self.spec = spec

    @property
    @abstractmethod
    def name(self) -> str:
        """The name of the learner."""

    @property
    def min_rows(self) -> int:
        """Fewest training rows the learner accepts for a stratum-arm fit."""
        return 2

    def fit(self, x, y) -> FittedModel:
        """
        Fit on covariates x and outcomes y.

        Raises:
            InvalidInputError: On zero rows, mismatched lengths or non-finite data.
        """
        x = as_design_matrix(x)
        y = np.asarray(y, dtype=float).reshape(-1)
        if x.shape[0] == 0:
            raise InvalidInputError("Cannot fit a learner on zero rows")
        if x.shape[0] != y.shape[0]:
            raise InvalidInputError(
                f"x has {x.shape[0]} rows but y has {y.shape[0]} entries"
            )
        if not np.all(np.isfinite(y)):
            raise InvalidInputError("Outcomes contain non-finite values")
        return self._fit(x, y)

    @abstractmethod
    def _fit(self, x: np.ndarray, y: np.ndarray) -> FittedModel:
        """Fit on validated data."""
