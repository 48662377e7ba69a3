import numpy as np
import pandas as pd

from errors import InvalidInputError, InvalidSpecError

from .design_spec import Assignment, DesignSpec
from .rng import make_rng


def minimization(factor_levels, spec: DesignSpec) -> Assignment:
    """
    Pocock-Simon minimization with a biased coin.

    Units arrive in row order. For each unit and each candidate arm, the
    imbalance is the weighted sum over factors of |n1 - n0| on the unit's
    level, counting the unit itself in the candidate arm. The arm with the
    smaller imbalance is taken with probability biased_coin; exact ties are
    decided by a fair coin.

    Args:
        factor_levels: n x F matrix (or length-n vector) of categorical labels.
        spec: Design specification; factor_weights defaults to equal weights.

    Returns:
        The assignment.
    """
    levels = np.asarray(factor_levels, dtype=object)
    if levels.ndim == 1:
        levels = levels.reshape(-1, 1)
    n, n_factors = levels.shape
    if n < 1 or n_factors < 1:
        raise InvalidInputError("factor_levels must have at least one row and factor")

    weights = np.asarray(spec.factor_weights or (1.0,) * n_factors, dtype=float)
    if weights.size != n_factors:
        raise InvalidSpecError(
            f"factor_weights has {weights.size} entries for {n_factors} factors"
        )

    codes = np.column_stack(
        [pd.factorize(levels[:, f], sort=False)[0] for f in range(n_factors)]
    )
    # counts[f][level, arm]
    counts = [np.zeros((codes[:, f].max() + 1, 2)) for f in range(n_factors)]
    rng = make_rng(spec.seed)
    arms = np.zeros(n, dtype=np.int8)

    for i in range(n):
        imbalance = np.zeros(2)
        for f in range(n_factors):
            n0, n1 = counts[f][codes[i, f]]
            imbalance[0] += weights[f] * abs(n1 - (n0 + 1))
            imbalance[1] += weights[f] * abs((n1 + 1) - n0)
        if imbalance[1] < imbalance[0]:
            p_treat = spec.biased_coin
        elif imbalance[1] > imbalance[0]:
            p_treat = 1.0 - spec.biased_coin
        else:
            p_treat = 0.5
        arm = int(rng.random() < p_treat)
        arms[i] = arm
        for f in range(n_factors):
            counts[f][codes[i, f], arm] += 1

    return Assignment(arms=arms)
