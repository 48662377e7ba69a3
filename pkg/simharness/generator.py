import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Tuple

import numpy as np

from config import settings
from design import DesignSpec, assign, derive_seed, make_rng
from errors import InvalidSpecError
from proxy import Trial

from .models import apply_interactions, get_model, interaction_plan


logger = logging.getLogger(__name__)

STREAM_DATA = 0
STREAM_DESIGN = 1
STREAM_INTERACTIONS = 2
STREAM_ESTIMATORS = 3
STREAM_FROZEN_INTERACTIONS = 4

ORACLE_CHUNK = 1_000_000


@dataclass(frozen=True)
class ModelSpec:
    """
    One simulation setting.

    freeze_interactions draws the interaction plan of Models 2 and 4 once per
    study instead of once per replication.
    """

    model_id: int = 1
    n: int = 1000
    p: int = 30
    design: DesignSpec = field(default_factory=DesignSpec)
    seed: int = 0
    freeze_interactions: bool = False

    def __post_init__(self):
        get_model(self.model_id)
        if self.p < 4:
            raise InvalidSpecError(f"Models need p >= 4, got {self.p}")
        if self.n < 50:
            raise InvalidSpecError(f"Models need n >= 50, got {self.n}")


@lru_cache(maxsize=None)
def true_tau_with_se(
    model_id: int, draws: int = None, seed: int = None
) -> Tuple[float, float]:
    """
    Monte Carlo mean of g_1(X) - g_0(X) and its standard error.

    Only X_1..X_4 and the randomization variable enter the outcome models, so
    the oracle draws those alone, in chunks.
    """
    draws = draws or settings.ORACLE_DRAWS
    seed = settings.ORACLE_SEED if seed is None else seed
    model = get_model(model_id)
    rng = make_rng(seed, model_id)
    total = total_sq = 0.0
    remaining = draws
    while remaining > 0:
        size = min(ORACLE_CHUNK, remaining)
        x, s = model.draw(rng, size, 4)
        effect = model.g1(x, s) - model.g0(x, s)
        total += float(effect.sum())
        total_sq += float((effect**2).sum())
        remaining -= size
    mean = total / draws
    variance = max(total_sq / draws - mean**2, 0.0)
    logger.info(f"Model {model_id} oracle tau {mean:.6f} from {draws} draws")
    return mean, float(np.sqrt(variance / draws))


def true_tau(model_id: int) -> float:
    return true_tau_with_se(model_id)[0]


def generate(spec: ModelSpec, rep: int, with_tau: bool = True) -> Tuple[Trial, float]:
    """
    Draw replication rep of a simulation setting.

    Returns:
        The trial and the true average treatment effect (nan when with_tau is
        False).
    """
    model = get_model(spec.model_id)
    rng = make_rng(spec.seed, STREAM_DATA, rep)
    x, s = model.draw(rng, spec.n, spec.p)
    g0, g1 = model.g0(x, s), model.g1(x, s)
    e0, e1 = model.draw_errors(rng, spec.n)

    if model.has_interactions:
        if spec.freeze_interactions:
            plan_rng = make_rng(spec.seed, STREAM_FROZEN_INTERACTIONS)
        else:
            plan_rng = make_rng(spec.seed, STREAM_INTERACTIONS, rep)
        x = apply_interactions(x, interaction_plan(plan_rng, spec.p))

    design = replace(spec.design, seed=derive_seed(spec.seed, STREAM_DESIGN, rep))
    a = assign(design, s).arms
    y = np.where(a == 1, g1 + e1, g0 + e0)
    trial = Trial.from_labels(
        y, a, s, x, covariate_names=[f"x{j + 1}" for j in range(spec.p)]
    )
    tau = true_tau(spec.model_id) if with_tau else float("nan")
    return trial, tau
