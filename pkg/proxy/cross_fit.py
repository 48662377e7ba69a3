import numpy as np

from design.rng import make_rng
from errors import DegenerateStratumError, InvalidInputError

from .trial import Trial


def cross_fit_split(trial: Trial, folds: int = 2, seed: int = 0) -> np.ndarray:
    """
    Fold id per unit, splitting every (stratum, arm) cell as evenly as possible.

    Within a cell units are shuffled and dealt round-robin; the dealing offset
    carries over between cells so that leftover units rotate across folds.

    Raises:
        DegenerateStratumError: If a cell has fewer units than folds.
    """
    if folds < 2:
        raise InvalidInputError(f"folds must be at least 2, got {folds}")
    rng = make_rng(seed)
    fold_ids = np.full(trial.n, -1, dtype=np.int64)
    offset = 0
    for k in range(1, trial.num_strata + 1):
        for arm in (1, 0):
            rows = trial.cell(k, arm)
            if rows.size < folds:
                raise DegenerateStratumError(
                    f"Stratum {k} arm {arm} has {rows.size} unit(s), "
                    f"fewer than {folds} folds",
                    stratum=k,
                )
            shuffled = rng.permutation(rows)
            fold_ids[shuffled] = (np.arange(rows.size) + offset) % folds
            offset += rows.size
    return fold_ids
