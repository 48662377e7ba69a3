"""
Plug-in variance components with per-stratum degree-of-freedom adjustment.

    var_y          within-stratum outcome variance
    var_h          between-stratum effect heterogeneity
    var_explained  the part of var_y the proxy accounts for

The estimator variance is (var_h + var_y - var_explained) / n.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import stats

from calibration import ConstraintSystem, build_constraints
from errors import InferenceError, InsufficientDfError, InvalidInputError
from linalg import pseudo_inverse_with_rank
from proxy import ProxyMatrix, Trial


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VarianceComponents:
    var_h: float
    var_y: float
    var_explained: float
    ranks: np.ndarray
    df_factors: np.ndarray

    @property
    def total(self) -> float:
        return self.var_h + self.var_y - self.var_explained

    def as_dict(self) -> dict:
        values = asdict(self)
        values["total"] = self.total
        return values


def variance_components(
    trial: Trial,
    proxy: Optional[ProxyMatrix] = None,
    cs: Optional[ConstraintSystem] = None,
    adjust_df: bool = True,
) -> VarianceComponents:
    """
    Variance components of a calibration estimator.

    Without a proxy (and constraint system) this is the stratified
    difference-in-means variance: no explained part and ranks of zero.

    Args:
        trial: The trial.
        proxy: Proxy used for calibration; only needed when cs is not given.
        cs: Constraint system, reused for the centered proxy.
        adjust_df: Apply n_k / (n_k - r_k - 1); False forces every factor to 1.

    Raises:
        DegenerateStratumError: If a stratum lacks an arm.
        InsufficientDfError: If n_k <= r_k + 1 in some stratum.
    """
    summary = trial.stratum_summary()
    if cs is None and proxy is not None:
        cs = build_constraints(trial, proxy)
    if cs is not None and cs.n != trial.n:
        raise InvalidInputError("Constraint system is not aligned with the trial")

    n = trial.n
    num_strata = trial.num_strata
    y, a = trial.y, trial.a
    arm1 = a == 1
    overall_contrast = y[arm1].mean() - y[~arm1].mean()

    ranks = np.zeros(num_strata, dtype=np.int64)
    df_factors = np.ones(num_strata)
    var_y = var_h = var_explained = 0.0
    for k in range(1, num_strata + 1):
        rows = trial.stratum == k
        pi, p = summary.pi_k[k - 1], summary.p_k[k - 1]
        n_k = summary.n_k[k - 1]
        ybar1, ybar0 = summary.ybar1_k[k - 1], summary.ybar0_k[k - 1]
        a_k, y_k = a[rows], y[rows]
        resid1 = np.where(a_k == 1, y_k - ybar1, 0.0)
        resid0 = np.where(a_k == 0, y_k - ybar0, 0.0)

        explained_k = 0.0
        if cs is not None:
            centered = cs.xi_centered[rows]
            gamma = (
                ((1 - pi) / pi) * centered.T @ resid1
                + (pi / (1 - pi)) * centered.T @ resid0
            ) / n
            sigma = (centered.T * (a_k - pi) ** 2) @ centered / n
            sigma_pinv, rank = pseudo_inverse_with_rank(sigma)
            ranks[k - 1] = min(rank, cs.d)
            explained_k = float(gamma @ sigma_pinv @ gamma)

        if adjust_df:
            dof = n_k - ranks[k - 1] - 1
            if dof <= 0:
                raise InsufficientDfError(
                    f"Stratum {k} has {int(n_k)} units but rank {ranks[k - 1]}; "
                    f"merge or prune it",
                    stratum=k,
                )
            df_factors[k - 1] = n_k / dof

        df = df_factors[k - 1]
        ms1 = float(resid1 @ resid1) / summary.n1_k[k - 1]
        ms0 = float(resid0 @ resid0) / summary.n0_k[k - 1]
        var_y += df * (p / (1 - pi) * ms0 + p / pi * ms1)
        var_h += df * p * (ybar1 - ybar0 - overall_contrast) ** 2
        var_explained += df * explained_k

    return VarianceComponents(
        var_h=float(var_h),
        var_y=float(var_y),
        var_explained=float(var_explained),
        ranks=ranks,
        df_factors=df_factors,
    )


def normal_interval(
    tau_hat: float, se: float, level: float = 0.95
) -> Tuple[float, float]:
    """tau_hat -/+ z_{(1 + level) / 2} * se."""
    if not 0 < level < 1:
        raise InvalidInputError(f"level must be in (0, 1), got {level}")
    half_width = stats.norm.ppf((1 + level) / 2) * se
    return tau_hat - half_width, tau_hat + half_width


def confidence_interval(
    tau_hat: float, vc: VarianceComponents, n: int, level: float = 0.95
) -> Tuple[float, float, float]:
    """
    Normal-theory interval.

    Returns:
        (low, high, se) with se = sqrt(total / n).

    Raises:
        InferenceError: If the total variance is not positive; the raw
            components ride along on the exception.
    """
    total = vc.total
    if not total > 0:
        logger.warning(f"Non-positive total variance {total:.6g}")
        raise InferenceError(
            f"Total variance {total:.6g} is not positive; the proxy over-explains "
            f"the outcome in this sample",
            components=vc.as_dict(),
        )
    se = float(np.sqrt(total / n))
    low, high = normal_interval(tau_hat, se, level)
    return low, high, se
