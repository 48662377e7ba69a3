from .matrixkit import (
    default_tolerance,
    numerical_rank,
    pseudo_inverse,
    pseudo_inverse_with_rank,
    solve_positive_definite,
)


__all__ = [
    "default_tolerance",
    "numerical_rank",
    "pseudo_inverse",
    "pseudo_inverse_with_rank",
    "solve_positive_definite",
]
