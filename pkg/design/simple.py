import numpy as np

from errors import InvalidInputError

from .design_spec import Assignment, DesignSpec
from .rng import make_rng


def simple_randomize(n: int, spec: DesignSpec) -> Assignment:
    """Independent Bernoulli(target_share) assignment, reproducible from the seed."""
    if n < 1:
        raise InvalidInputError(f"n must be at least 1, got {n}")
    rng = make_rng(spec.seed)
    return Assignment(arms=(rng.random(n) < spec.target_share).astype(np.int8))
