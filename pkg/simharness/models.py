"""
Data-generating processes for the simulation study.

Every model draws base covariates X_1..X_p and a randomization variable, then
evaluates the conditional means g_0 and g_1 on the base covariates. Models 2
and 4 afterwards multiply floor(p / 3) of X_3..X_p by X_1 or X_2 to form the
observed covariates; outcomes are unaffected by that step.
"""

from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Dict, Tuple, Type

import numpy as np
from scipy import linalg

from errors import InvalidSpecError


Covariates = Tuple[np.ndarray, np.ndarray]


@lru_cache(maxsize=None)
def covariance_root(kind: str, dim: int) -> np.ndarray:
    """
    Symmetric square root of the covariance of the trailing normal block.

    kind "equicorrelated" has 0.2 off the diagonal; kind "toeplitz" has first
    row 1, 0.5, 0.25, ...
    """
    if kind == "equicorrelated":
        cov = np.full((dim, dim), 0.2)
        np.fill_diagonal(cov, 1.0)
    elif kind == "toeplitz":
        cov = linalg.toeplitz(0.5 ** np.arange(dim))
    else:
        raise InvalidSpecError(f"Unknown covariance {kind!r}")
    eigenvalues, eigenvectors = linalg.eigh(cov)
    root = (eigenvectors * np.sqrt(np.clip(eigenvalues, 0.0, None))) @ eigenvectors.T
    root.setflags(write=False)
    return root


def _normal_block(rng: np.random.Generator, n: int, dim: int, kind: str) -> np.ndarray:
    if dim <= 0:
        return np.empty((n, 0))
    return rng.standard_normal((n, dim)) @ covariance_root(kind, dim)


def _shared_additional(rng: np.random.Generator, n: int, p: int) -> np.ndarray:
    """X_3 in {-1, 1}, X_4 in {3, 5} w.p. 0.6 / 0.4, X_5..X_p equicorrelated normal."""
    x3 = rng.choice(np.array([-1.0, 1.0]), size=n)
    x4 = rng.choice(np.array([3.0, 5.0]), size=n, p=[0.6, 0.4])
    return np.column_stack([x3, x4, _normal_block(rng, n, p - 4, "equicorrelated")])


class OutcomeModel(ABC):
    """One data-generating process."""

    model_id: int
    strata_values: Tuple[float, ...] = (1, 2, 3, 4)
    strata_probs: Tuple[float, ...] = (0.2, 0.3, 0.3, 0.2)
    has_interactions: bool = False

    def draw_strata(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.choice(np.array(self.strata_values), size=n, p=self.strata_probs)

    def draw(self, rng: np.random.Generator, n: int, p: int) -> Covariates:
        """Base covariates (n x p) and the randomization variable."""
        x = self.draw_covariates(rng, n, p)
        return x, self.draw_strata(rng, n)

    @abstractmethod
    def draw_covariates(self, rng: np.random.Generator, n: int, p: int) -> np.ndarray:
        """Base covariates X_1..X_p."""

    @abstractmethod
    def g0(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        """Control conditional mean."""

    @abstractmethod
    def g1(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        """Treated conditional mean."""

    def draw_errors(
        self, rng: np.random.Generator, n: int
    ) -> Tuple[np.ndarray, np.ndarray]:
        """eps_0 ~ N(0, 1) and eps_1 ~ N(0, 9)."""
        return rng.standard_normal(n), 3.0 * rng.standard_normal(n)


class StandardCovariates(OutcomeModel):
    """X_1 ~ Beta(3, 4), X_2 ~ U(-2, 2) and the shared X_3..X_p."""

    def draw_covariates(self, rng, n, p):
        x1 = rng.beta(3.0, 4.0, size=n)
        x2 = rng.uniform(-2.0, 2.0, size=n)
        return np.column_stack([x1, x2, _shared_additional(rng, n, p)])


class LinearModel(StandardCovariates):
    """Linear conditional means in X_1..X_4."""

    model_id = 1
    mu = (1.0, 4.0)
    beta0 = np.array([75.0, 35.0, 125.0, 80.0])
    beta1 = np.array([100.0, 80.0, 60.0, 40.0])

    def g0(self, x, s):
        return self.mu[0] + x[:, :4] @ self.beta0

    def g1(self, x, s):
        return self.mu[1] + x[:, :4] @ self.beta1

    @classmethod
    def closed_form_tau(cls) -> float:
        means = np.array([3.0 / 7.0, 0.0, 0.0, 0.6 * 3.0 + 0.4 * 5.0])
        return cls.mu[1] - cls.mu[0] + float((cls.beta1 - cls.beta0) @ means)


class AdditiveModel(StandardCovariates):
    """Additive, nonlinear conditional means."""

    model_id = 2
    has_interactions = True

    def g0(self, x, s):
        return (
            -3.0
            + 10.0 * np.log(x[:, 0] + 1.0)
            + 24.0 * x[:, 1] ** 2
            + 15.0 * np.exp(x[:, 2])
            + 20.0 / (x[:, 3] + 3.0)
        )

    def g1(self, x, s):
        return (
            20.0 * np.exp(x[:, 0] + 2.0)
            + 17.0 / (x[:, 0] + 1.0)
            + 10.0 * x[:, 1] ** 2
        )


class NonAdditiveModel(OutcomeModel):
    """Non-additive conditional means with t(2) errors."""

    model_id = 3
    strata_values = (1, 2)
    strata_probs = (0.4, 0.6)

    def draw_covariates(self, rng, n, p):
        x1 = rng.beta(3.0, 4.0, size=n)
        x2 = rng.uniform(-2.0, 2.0, size=n)
        x3 = rng.standard_normal(n)
        x4 = rng.uniform(0.0, 2.0, size=n)
        return np.column_stack([x1, x2, x3, x4, _normal_block(rng, n, p - 4, "toeplitz")])

    def g0(self, x, s):
        x1, x2, x3 = x[:, 0], x[:, 1], x[:, 2]
        return 5.0 + 42.0 * x1 * x2 / (x1 + x2 + 2.0) + 83.0 * x1**2 * (x2 + x3)

    def g1(self, x, s):
        x1, x2, x4 = x[:, 0], x[:, 1], x[:, 3]
        return 2.0 + 30.0 * (x2 + x4) + 75.0 * x2**2 / np.exp(x1 + 2.0)

    def draw_errors(self, rng, n):
        return rng.standard_t(2, size=n), 3.0 * rng.standard_t(2, size=n)


class HeterogeneousModel(StandardCovariates):
    """Conditional means whose shape depends on the randomization variable S."""

    model_id = 4
    strata_values = (1, -1)
    strata_probs = (0.5, 0.5)
    has_interactions = True

    def g0(self, x, s):
        x1, x2 = x[:, 0], x[:, 1]
        return 5.0 + (20.0 * x1 + 30.0 * x2) * s + 50.0 * np.log(x1 + 1.0) * (s == 1)

    def g1(self, x, s):
        x1, x2 = x[:, 0], x[:, 1]
        return 5.0 + (20.0 * x1 + 30.0 * x2) * s + 65.0 * np.exp(x2) * (s == -1)


MODELS: Dict[int, Type[OutcomeModel]] = {
    model.model_id: model
    for model in (LinearModel, AdditiveModel, NonAdditiveModel, HeterogeneousModel)
}


def get_model(model_id: int) -> OutcomeModel:
    try:
        return MODELS[int(model_id)]()
    except KeyError:
        raise InvalidSpecError(f"Unknown model {model_id}; choose one of {sorted(MODELS)}")


def interaction_plan(
    rng: np.random.Generator, p: int
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Which of X_3..X_p get multiplied, and by X_1 (0) or X_2 (1).

    Returns:
        (columns, multipliers) as 0-based column indices.
    """
    count = p // 3
    columns = np.sort(rng.choice(np.arange(2, p), size=count, replace=False))
    multipliers = rng.integers(0, 2, size=count)
    return columns, multipliers


def apply_interactions(x: np.ndarray, plan: Tuple[np.ndarray, np.ndarray]) -> np.ndarray:
    columns, multipliers = plan
    observed = x.copy()
    observed[:, columns] = x[:, columns] * x[:, multipliers]
    return observed
