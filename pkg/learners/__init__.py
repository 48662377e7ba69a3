from .learner import FittedModel, Learner, LearnerKind, LearnerSpec
from .registry import fit, get_learner, predict


__all__ = [
    "FittedModel",
    "Learner",
    "LearnerKind",
    "LearnerSpec",
    "fit",
    "get_learner",
    "predict",
]
