from typing import Dict, Type

import numpy as np

from errors import InvalidSpecError

from .learner import FittedModel, Learner, LearnerKind, LearnerSpec
from .linear import OlsLearner, RidgeLearner
from .neighbors import KnnLearner
from .trees import BaggedTreesLearner, TreeLearner


LEARNERS: Dict[LearnerKind, Type[Learner]] = {
    LearnerKind.OLS: OlsLearner,
    LearnerKind.RIDGE: RidgeLearner,
    LearnerKind.KNN: KnnLearner,
    LearnerKind.TREE: TreeLearner,
    LearnerKind.BAGGED_TREES: BaggedTreesLearner,
}


def get_learner(spec: LearnerSpec) -> Learner:
    try:
        return LEARNERS[spec.kind](spec)
    except KeyError:
        raise InvalidSpecError(f"Unknown learner kind {spec.kind}")


def fit(spec: LearnerSpec, x, y) -> FittedModel:
    """Fit the learner described by spec; deterministic given spec.seed."""
    return get_learner(spec).fit(x, y)


def predict(model: FittedModel, x) -> np.ndarray:
    return model.predict(x)
