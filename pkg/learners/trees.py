from typing import List

import numpy as np
from sklearn.tree import DecisionTreeRegressor

from design.rng import derive_seed, make_rng, sklearn_seed

from .learner import FittedModel, Learner


class TreeModel(FittedModel):
    def __init__(self, tree: DecisionTreeRegressor, n_features: int, n_train: int):
        super().__init__(n_features=n_features, n_train=n_train)
        self._tree = tree

    def _predict(self, x: np.ndarray) -> np.ndarray:
        return self._tree.predict(x)


class EnsembleModel(FittedModel):
    """Average of member models."""

    def __init__(self, members: List[FittedModel], n_features: int, n_train: int):
        super().__init__(n_features=n_features, n_train=n_train)
        self.members = members

    def _predict(self, x: np.ndarray) -> np.ndarray:
        return np.mean([member._predict(x) for member in self.members], axis=0)


def _grow_tree(x: np.ndarray, y: np.ndarray, learner: Learner, seed: int):
    # Squared-error criterion, i.e. variance-reduction splits.
    tree = DecisionTreeRegressor(
        criterion="squared_error",
        max_depth=learner.spec.max_depth,
        min_samples_leaf=learner.spec.min_leaf_size,
        random_state=sklearn_seed(seed),
    )
    tree.fit(x, y)
    return TreeModel(tree, n_features=x.shape[1], n_train=x.shape[0])


class TreeLearner(Learner):
    """CART regression tree."""

    @property
    def name(self) -> str:
        return "tree"

    def _fit(self, x: np.ndarray, y: np.ndarray) -> TreeModel:
        return _grow_tree(x, y, self, self.spec.seed)


class BaggedTreesLearner(Learner):
    """
    Bootstrap-aggregated CART trees.

    Tree b is grown with seed spec.seed for b = 0 and a derived seed otherwise,
    so a one-tree ensemble without bootstrap is exactly TreeLearner.
    """

    @property
    def name(self) -> str:
        return "bagged-trees"

    def _fit(self, x: np.ndarray, y: np.ndarray) -> EnsembleModel:
        n = x.shape[0]
        members = []
        for b in range(self.spec.n_trees):
            tree_seed = self.spec.seed if b == 0 else derive_seed(self.spec.seed, b)
            if self.spec.bootstrap:
                rows = make_rng(self.spec.seed, b).integers(0, n, size=n)
            else:
                rows = np.arange(n)
            members.append(_grow_tree(x[rows], y[rows], self, tree_seed))
        return EnsembleModel(members, n_features=x.shape[1], n_train=n)
