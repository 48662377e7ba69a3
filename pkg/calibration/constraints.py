import logging
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from errors import InvalidInputError
from proxy import ProxyMatrix, Trial


logger = logging.getLogger(__name__)


def center_by_stratum(
    values: np.ndarray, stratum: np.ndarray, num_strata: int
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Subtract stratum means from every column.

    Columns that are constant inside a stratum come out as exact zeros there.

    Returns:
        (centered, means) with means of shape (num_strata, d).
    """
    values = np.asarray(values, dtype=float)
    centered = np.empty_like(values)
    means = np.zeros((num_strata, values.shape[1]))
    for k in range(1, num_strata + 1):
        rows = stratum == k
        block = values[rows]
        means[k - 1] = block.mean(axis=0)
        centered[rows] = block - means[k - 1]
        constant = np.ptp(block, axis=0) == 0
        centered[np.ix_(rows, constant)] = 0.0
    return centered, means


@dataclass(frozen=True)
class ConstraintSystem:
    """
    Stratum-block constraint matrix Xi and the stratum summaries behind it.

    Row i of xi_blocks holds (A_i - pi_k)(xi_i - xi_bar_k) in the d-block of its
    own stratum k and zeros elsewhere.
    """

    xi_blocks: np.ndarray
    xi_centered: np.ndarray
    xi_bar: np.ndarray
    pi_nk: np.ndarray
    p_nk: np.ndarray
    n_k: np.ndarray
    stratum: np.ndarray
    labels: Tuple[str, ...]
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def n(self) -> int:
        return self.xi_blocks.shape[0]

    @property
    def d(self) -> int:
        return self.xi_centered.shape[1]

    @property
    def num_strata(self) -> int:
        return self.pi_nk.shape[0]

    def block(self, k: int) -> slice:
        """Columns of xi_blocks belonging to stratum k (1-based)."""
        return slice((k - 1) * self.d, k * self.d)

    def balance(self, weights: np.ndarray) -> np.ndarray:
        """(1/n) sum_i w_i Xi_i, which calibration drives to zero."""
        return self.xi_blocks.T @ weights / self.n


def build_constraints(trial: Trial, proxy: ProxyMatrix) -> ConstraintSystem:
    """
    Build the constraint system for a trial and a proxy.

    Raises:
        DegenerateStratumError: If some stratum lacks an arm.
        InvalidInputError: If the proxy is not aligned with the trial.
    """
    if proxy.n != trial.n:
        raise InvalidInputError(
            f"Proxy has {proxy.n} rows but the trial has {trial.n} units"
        )
    summary = trial.stratum_summary()
    num_strata, d = trial.num_strata, proxy.d
    centered, means = center_by_stratum(proxy.values, trial.stratum, num_strata)

    index = trial.stratum - 1
    factor = trial.a - summary.pi_k[index]
    blocks = np.zeros((trial.n, num_strata * d))
    for k in range(1, num_strata + 1):
        rows = np.flatnonzero(trial.stratum == k)
        blocks[rows, (k - 1) * d : k * d] = factor[rows, None] * centered[rows]

    warnings = list(proxy.warnings)
    small = np.flatnonzero(summary.n_k < d + 2)
    for k in small + 1:
        message = (
            f"stratum {k} has {int(summary.n_k[k - 1])} units, fewer than d + 2 = {d + 2}"
        )
        logger.warning(message)
        warnings.append(message)

    return ConstraintSystem(
        xi_blocks=blocks,
        xi_centered=centered,
        xi_bar=means,
        pi_nk=summary.pi_k,
        p_nk=summary.p_k,
        n_k=summary.n_k,
        stratum=trial.stratum,
        labels=proxy.labels,
        warnings=tuple(warnings),
    )
