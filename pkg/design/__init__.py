from .design_spec import Assignment, DesignSpec, RandomizationScheme
from .minimization import minimization
from .randomizer import assign
from .rng import derive_seed, make_rng, sklearn_seed
from .simple import simple_randomize
from .stratified_block import stratified_block


__all__ = [
    "Assignment",
    "DesignSpec",
    "RandomizationScheme",
    "assign",
    "derive_seed",
    "make_rng",
    "minimization",
    "simple_randomize",
    "sklearn_seed",
    "stratified_block",
]
