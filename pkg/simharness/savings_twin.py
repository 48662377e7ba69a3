"""
A synthetic stand-in for a household savings field trial.

Outcome y is follow-up savings, x baseline savings, and treatment shifts y
by TWIN_EFFECT. y grows like (x + 1) ** TWIN_EXPONENT, the shape a power
proxy is meant to capture. The profile has 41 strata and 2,159 households:
37 strata of 57 or 58 households, plus four strata of 11 with only five
households in one arm, which per-arm pruning at six removes.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import pandas as pd

from dataio import CsvSchema
from design import make_rng


TWIN_SCHEMA = CsvSchema(
    outcome_col="y", arm_col="a", stratum_col="stratum", covariate_cols=("x",)
)
TWIN_EFFECT = 10.0
TWIN_EXPONENT = 0.481
EXTERNAL_SIZE = 1500

LARGE_STRATA = (57,) * 31 + (58,) * 6
SMALL_STRATA = (11,) * 4
SMALL_ARM = 5


@dataclass(frozen=True)
class SavingsTwin:
    trial: pd.DataFrame
    external: pd.DataFrame


def _baseline(rng: np.random.Generator, size: int, shift: float = 0.0) -> np.ndarray:
    return np.expm1(rng.normal(3.0 + shift, 1.0, size=size))


def _savings(rng: np.random.Generator, x: np.ndarray) -> np.ndarray:
    return 5.0 + 8.0 * (x + 1.0) ** TWIN_EXPONENT + rng.normal(0.0, 5.0, size=x.size)


def stratum_profile() -> Tuple[int, ...]:
    return LARGE_STRATA + SMALL_STRATA


def make_savings_twin(seed: int = 0) -> SavingsTwin:
    """
    Build the trial and a covariate-shifted external sample.

    The external sample has no treatment; its baseline savings are drawn with
    a larger log-mean.
    """
    rng = make_rng(seed)
    frames = []
    sizes = stratum_profile()
    stratum_effects = rng.normal(0.0, 2.0, size=len(sizes))
    for k, size in enumerate(sizes):
        if k >= len(LARGE_STRATA):
            treated = SMALL_ARM if rng.random() < 0.5 else size - SMALL_ARM
        else:
            treated = size // 2 + int(rng.integers(0, 2)) * (size % 2)
        a = rng.permutation(np.r_[np.ones(treated), np.zeros(size - treated)])
        x = _baseline(rng, size)
        y = _savings(rng, x) + stratum_effects[k] + TWIN_EFFECT * a
        frames.append(
            pd.DataFrame(
                {
                    TWIN_SCHEMA.outcome_col: y,
                    TWIN_SCHEMA.arm_col: a.astype(int),
                    TWIN_SCHEMA.stratum_col: f"S{k + 1:02d}",
                    "x": x,
                }
            )
        )
    trial = pd.concat(frames, ignore_index=True)
    trial = trial.iloc[rng.permutation(len(trial))].reset_index(drop=True)

    x_ext = _baseline(rng, EXTERNAL_SIZE, shift=0.3)
    external = pd.DataFrame({"y": _savings(rng, x_ext), "x": x_ext})
    return SavingsTwin(trial=trial, external=external)


def write_savings_twin(twin: SavingsTwin, trial_path, external_path) -> None:
    twin.trial.to_csv(trial_path, index=False, float_format="%.17g")
    twin.external.to_csv(external_path, index=False, float_format="%.17g")
