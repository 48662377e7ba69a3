import enum
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from errors import InvalidSpecError


@enum.unique
class RandomizationScheme(str, enum.Enum):
    """Supported covariate-adaptive randomization schemes."""

    SIMPLE = "simple"
    STRATIFIED_BLOCK = "stratified-block"
    MINIMIZATION = "minimization"


@dataclass(frozen=True)
class DesignSpec:
    """
    Parameters of a treatment-assignment design.

    block_size is used by stratified-block only; biased_coin and
    factor_weights by minimization only. An empty factor_weights means equal
    weights.
    """

    scheme: RandomizationScheme = RandomizationScheme.STRATIFIED_BLOCK
    target_share: float = 0.5
    block_size: int = 6
    biased_coin: float = 0.75
    factor_weights: Tuple[float, ...] = field(default_factory=tuple)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "scheme", RandomizationScheme(self.scheme))
        if not 0.0 < self.target_share < 1.0:
            raise InvalidSpecError(
                f"target_share must lie in (0, 1), got {self.target_share}"
            )
        if self.scheme is RandomizationScheme.STRATIFIED_BLOCK and (
            self.block_size < 2 or self.block_size % 2
        ):
            raise InvalidSpecError(
                f"block_size must be an even count >= 2, got {self.block_size}"
            )
        if not 0.5 < self.biased_coin <= 1.0:
            raise InvalidSpecError(
                f"biased_coin must lie in (0.5, 1], got {self.biased_coin}"
            )
        if any(w < 0 for w in self.factor_weights):
            raise InvalidSpecError("factor_weights must be non-negative")
        if not 0 <= self.seed < (1 << 64):
            raise InvalidSpecError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class Assignment:
    """Treatment indicators A_i for n units."""

    arms: np.ndarray

    def __post_init__(self):
        arms = np.asarray(self.arms, dtype=np.int8)
        if arms.ndim != 1 or not np.isin(arms, (0, 1)).all():
            raise InvalidSpecError("Assignment arms must be a 0/1 vector")
        object.__setattr__(self, "arms", arms)

    def __len__(self) -> int:
        return self.arms.shape[0]
