import logging

import numpy as np
import pandas as pd

from errors import InvalidInputError, InvalidSpecError

from .design_spec import Assignment, DesignSpec
from .rng import make_rng


logger = logging.getLogger(__name__)


def treated_per_block(spec: DesignSpec) -> int:
    """Number of treated units in one full block; must be an integer."""
    treated = spec.block_size * spec.target_share
    if abs(treated - round(treated)) > 1e-9:
        raise InvalidSpecError(
            f"block_size * target_share = {treated} is not an integer treated count"
        )
    return int(round(treated))


def stratified_block(strata, spec: DesignSpec) -> Assignment:
    """
    Permuted-block randomization inside each stratum.

    Units of a stratum are taken in their input order and cut into consecutive
    blocks of block_size. Each block is a random permutation holding exactly
    block_size * target_share treated units; a final partial block is the
    prefix of one more shuffled full block.

    Args:
        strata: Stratum label per unit (any hashable tokens).
        spec: Design specification.

    Returns:
        The assignment.

    Raises:
        InvalidSpecError: If block_size * target_share is not an integer.
    """
    labels = np.asarray(strata)
    if labels.ndim != 1 or labels.size == 0:
        raise InvalidInputError("strata must be a non-empty label vector")
    treated = treated_per_block(spec)
    template = np.r_[np.ones(treated), np.zeros(spec.block_size - treated)]

    codes, _ = pd.factorize(labels, sort=False)
    rng = make_rng(spec.seed)
    arms = np.zeros(labels.size, dtype=np.int8)
    for code in range(codes.max() + 1):
        members = np.flatnonzero(codes == code)
        for start in range(0, members.size, spec.block_size):
            block = members[start : start + spec.block_size]
            arms[block] = rng.permutation(template)[: block.size]
    logger.debug(
        f"Stratified block assignment: {codes.max() + 1} strata, "
        f"{int(arms.sum())}/{arms.size} treated"
    )
    return Assignment(arms=arms)
