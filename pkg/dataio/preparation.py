"""
Data preparation before estimation: upper-tail winsorization and removal of
strata too small to estimate within.
"""

import enum
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from errors import EmptyTrialError, InvalidInputError
from proxy import Trial


logger = logging.getLogger(__name__)


def winsorize(
    values, upper_percentile: float = 0.99, return_cap: bool = False
):
    """
    Cap values above the empirical upper_percentile quantile at that quantile.

    The quantile interpolates linearly between order statistics (type 7). The
    lower tail is left alone.

    Repeating the call is a no-op only when (n - 1) * upper_percentile is an
    integer, so the cap lands on an order statistic. Otherwise the cap sits
    between two order statistics, the capped maximum pulls the next quantile
    lower, and each pass trims a little more: 1..100 at 0.99 caps at 99.01,
    then at 99.0001.

    Args:
        values: Vector to winsorize.
        upper_percentile: Quantile level in (0, 1]; 1 leaves values unchanged.
        return_cap: Also return the cap.

    Raises:
        InvalidInputError: If values is empty or the level is out of range.
    """
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.size == 0:
        raise InvalidInputError("Cannot winsorize an empty vector")
    if not 0 < upper_percentile <= 1:
        raise InvalidInputError(
            f"upper_percentile must be in (0, 1], got {upper_percentile}"
        )
    cap = float(np.quantile(values, upper_percentile, method="linear"))
    capped = np.minimum(values, cap)
    logger.debug(f"winsorized {(values > cap).sum()} value(s) at {cap:.6g}")
    if return_cap:
        return capped, cap
    return capped


@enum.unique
class PruneRule(str, enum.Enum):
    STRATUM = "stratum"
    ARM = "arm"


@dataclass(frozen=True)
class PruneResult:
    trial: Trial
    removed_units: int
    removed_strata: Tuple[str, ...]


def prune_strata(trial: Trial, min_size: int, by: str = "stratum") -> PruneResult:
    """
    Drop small strata and relabel the rest 1..K' in their original order.

    Args:
        trial: The trial.
        min_size: Smallest stratum size (by="stratum") or smallest arm size
            inside a stratum (by="arm") that is kept.
        by: Which count min_size applies to.

    Raises:
        EmptyTrialError: If every stratum is removed.
    """
    if min_size < 1:
        raise InvalidInputError(f"min_size must be >= 1, got {min_size}")
    try:
        rule = PruneRule(by)
    except ValueError:
        raise InvalidInputError(f"by must be 'stratum' or 'arm', got {by!r}")
    summary = trial.stratum_summary(require_both_arms=False)
    if rule is PruneRule.STRATUM:
        keep = summary.n_k >= min_size
    else:
        keep = np.minimum(summary.n1_k, summary.n0_k) >= min_size
    if not keep.any():
        raise EmptyTrialError(f"Every stratum has fewer than {min_size} units")

    removed = tuple(trial.stratum_names[k] for k in np.flatnonzero(~keep))
    if not removed:
        return PruneResult(trial=trial, removed_units=0, removed_strata=())

    kept_codes = np.flatnonzero(keep) + 1
    rows = np.flatnonzero(np.isin(trial.stratum, kept_codes))
    new_codes = np.zeros(trial.num_strata + 1, dtype=np.int64)
    new_codes[kept_codes] = np.arange(1, kept_codes.size + 1)
    pruned = Trial(
        trial.y[rows],
        trial.a[rows],
        new_codes[trial.stratum[rows]],
        trial.x[rows],
        trial.covariate_names,
        tuple(trial.stratum_names[k - 1] for k in kept_codes),
    )
    logger.info(
        f"Pruned {len(removed)} strata ({trial.n - pruned.n} units); "
        f"{pruned.n} units in {pruned.num_strata} strata remain"
    )
    return PruneResult(
        trial=pruned, removed_units=trial.n - pruned.n, removed_strata=removed
    )
