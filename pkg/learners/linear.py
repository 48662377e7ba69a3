import logging

import numpy as np

from linalg import numerical_rank, pseudo_inverse, solve_positive_definite

from .learner import FittedModel, Learner


logger = logging.getLogger(__name__)


class LinearModel(FittedModel):
    """y = intercept + x @ coef."""

    def __init__(self, intercept: float, coef: np.ndarray, n_train: int):
        super().__init__(n_features=coef.shape[0], n_train=n_train)
        self.intercept = float(intercept)
        self.coef = coef

    def _predict(self, x: np.ndarray) -> np.ndarray:
        return self.intercept + x @ self.coef


def _ridge_coefficients(x: np.ndarray, y: np.ndarray, penalty: float):
    x_mean = x.mean(axis=0)
    y_mean = y.mean()
    xc = x - x_mean
    coef = solve_positive_definite(xc.T @ xc, xc.T @ (y - y_mean), ridge=penalty)
    return y_mean - x_mean @ coef, coef


class OlsLearner(Learner):
    """
    Ordinary least squares with an intercept.

    A rank-deficient design is solved through the pseudoinverse (minimum-norm
    coefficients), or through a tiny ridge penalty when spec.ridge_fallback.
    """

    @property
    def name(self) -> str:
        return "ols"

    def _fit(self, x: np.ndarray, y: np.ndarray) -> LinearModel:
        design = np.column_stack([np.ones(x.shape[0]), x])
        if self.spec.ridge_fallback and numerical_rank(design) < design.shape[1]:
            gram_trace = float(np.trace(x.T @ x))
            penalty = 1e-8 * gram_trace / max(x.shape[1], 1)
            logger.debug(f"Rank-deficient OLS design, ridge fallback {penalty:.3g}")
            intercept, coef = _ridge_coefficients(x, y, penalty)
            return LinearModel(intercept, coef, n_train=x.shape[0])
        beta = pseudo_inverse(design) @ y
        return LinearModel(beta[0], beta[1:], n_train=x.shape[0])


class RidgeLearner(Learner):
    """Ridge regression with an unpenalized intercept."""

    @property
    def name(self) -> str:
        return "ridge"

    def _fit(self, x: np.ndarray, y: np.ndarray) -> LinearModel:
        intercept, coef = _ridge_coefficients(x, y, self.spec.ridge_penalty)
        return LinearModel(intercept, coef, n_train=x.shape[0])
