import numpy as np
from sklearn.neighbors import KNeighborsRegressor

from .learner import FittedModel, Learner


class NeighborsModel(FittedModel):
    def __init__(self, regressor: KNeighborsRegressor, n_features: int, n_train: int):
        super().__init__(n_features=n_features, n_train=n_train)
        self._regressor = regressor

    def _predict(self, x: np.ndarray) -> np.ndarray:
        return self._regressor.predict(x)


class KnnLearner(Learner):
    """Uniform-weight k-nearest-neighbour regression; k is capped at n."""

    @property
    def name(self) -> str:
        return "knn"

    @property
    def min_rows(self) -> int:
        return 1

    def _fit(self, x: np.ndarray, y: np.ndarray) -> NeighborsModel:
        k = min(self.spec.n_neighbors, x.shape[0])
        regressor = KNeighborsRegressor(n_neighbors=k, algorithm="brute")
        regressor.fit(x, y)
        return NeighborsModel(regressor, n_features=x.shape[1], n_train=x.shape[0])
