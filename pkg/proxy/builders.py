"""
Proxy builders.

Every learner-based builder fits on a training trial and evaluates at a
target trial (the training trial itself unless told otherwise), which is what
cross-fitting needs.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import DegenerateStratumError, InvalidInputError
from learners import FittedModel, LearnerSpec, get_learner

from .proxy_matrix import ProxyMatrix
from .trial import Trial


logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


def _fit_cells(
    trial: Trial, spec: LearnerSpec
) -> Tuple[Dict[Cell, FittedModel], List[str]]:
    """Fit h_{a[k]} on each (stratum, arm) cell, pooling tiny cells across strata."""
    learner = get_learner(spec)
    models: Dict[Cell, FittedModel] = {}
    warnings: List[str] = []
    pooled: Dict[int, FittedModel] = {}
    for k in range(1, trial.num_strata + 1):
        for arm in (1, 0):
            rows = trial.cell(k, arm)
            if rows.size == 0:
                raise DegenerateStratumError(
                    f"Stratum {k} has no units in arm {arm}", stratum=k
                )
            if rows.size < learner.min_rows:
                if arm not in pooled:
                    arm_rows = np.flatnonzero(trial.a == arm)
                    pooled[arm] = learner.fit(trial.x[arm_rows], trial.y[arm_rows])
                message = (
                    f"stratum {k} arm {arm} has {rows.size} unit(s); "
                    f"using the pooled {learner.name} fit"
                )
                logger.warning(message)
                warnings.append(message)
                models[(k, arm)] = pooled[arm]
            else:
                models[(k, arm)] = learner.fit(trial.x[rows], trial.y[rows])
    return models, warnings


def _check_target(trial: Trial, target: Trial) -> None:
    if target.p != trial.p:
        raise InvalidInputError("Training and target trials have different covariates")
    if target.num_strata != trial.num_strata:
        raise InvalidInputError("Training and target trials have different strata")


def within_stratum_proxy(
    trial: Trial, spec: LearnerSpec, target: Optional[Trial] = None
) -> ProxyMatrix:
    """
    Two columns: each unit's own-stratum treated fit and control fit.

    Raises:
        DegenerateStratumError: If some stratum lacks an arm.
    """
    target = target or trial
    _check_target(trial, target)
    models, warnings = _fit_cells(trial, spec)
    values = np.zeros((target.n, 2))
    for k in range(1, target.num_strata + 1):
        rows = np.flatnonzero(target.stratum == k)
        if rows.size == 0:
            continue
        values[rows, 0] = models[(k, 1)].predict(target.x[rows])
        values[rows, 1] = models[(k, 0)].predict(target.x[rows])
    kind = spec.kind.value
    return ProxyMatrix(
        values=values,
        labels=(f"within:{kind}:h1", f"within:{kind}:h0"),
        builder=f"within:{kind}",
        warnings=tuple(warnings),
    )


def cross_stratum_proxy(
    trial: Trial, spec: LearnerSpec, target: Optional[Trial] = None
) -> ProxyMatrix:
    """
    2K columns (h_1[k](X_i), h_0[k](X_i)) for every stratum k at every unit.

    May be rank-deficient by construction; the calibration solvers cope.
    """
    target = target or trial
    _check_target(trial, target)
    models, warnings = _fit_cells(trial, spec)
    columns = []
    labels = []
    kind = spec.kind.value
    for k in range(1, trial.num_strata + 1):
        for arm in (1, 0):
            columns.append(models[(k, arm)].predict(target.x))
            labels.append(f"cross:{kind}:h{arm}[{k}]")
    return ProxyMatrix(
        values=np.column_stack(columns),
        labels=tuple(labels),
        builder=f"cross:{kind}",
        warnings=tuple(warnings),
    )


def raw_covariate_proxy(
    trial: Trial,
    columns: Sequence = (),
    power_transforms: Sequence[Tuple[object, float, float]] = (),
) -> ProxyMatrix:
    """
    Raw covariate columns plus (x + shift) ** exponent transforms.

    Args:
        trial: Trial whose covariates are transformed.
        columns: Covariates (names or 0-based indices) taken as they are.
        power_transforms: (column, exponent, shift) triples.

    Raises:
        InvalidInputError: On unknown columns, a non-positive base under a
            fractional exponent, or non-finite results.
    """
    values = []
    labels = []
    for column in columns:
        j = trial.column_index(column)
        values.append(trial.x[:, j])
        labels.append(f"raw:{trial.covariate_names[j]}")
    for column, exponent, shift in power_transforms:
        j = trial.column_index(column)
        base = trial.x[:, j] + shift
        if float(exponent) != int(exponent) and (base <= 0).any():
            raise InvalidInputError(
                f"(x + {shift}) ** {exponent} needs a positive base for "
                f"covariate {trial.covariate_names[j]!r}"
            )
        with np.errstate(divide="ignore", invalid="ignore"):
            transformed = np.power(base, exponent)
        if not np.all(np.isfinite(transformed)):
            raise InvalidInputError(
                f"(x + {shift}) ** {exponent} is not finite for "
                f"covariate {trial.covariate_names[j]!r}"
            )
        values.append(transformed)
        labels.append(f"pow:({trial.covariate_names[j]}+{shift:g})^{exponent:g}")
    if not values:
        raise InvalidInputError("raw_covariate_proxy needs at least one column")
    return ProxyMatrix(
        values=np.column_stack(values), labels=tuple(labels), builder="raw"
    )


def external_proxy(
    trial: Trial,
    external_x,
    external_y,
    spec: LearnerSpec,
    columns: Optional[Sequence] = None,
) -> ProxyMatrix:
    """
    One column: a pooled, arm-agnostic fit on external data evaluated at every unit.

    Args:
        trial: Target trial.
        external_x: External covariates, one column per selected trial covariate.
        external_y: External outcomes.
        spec: Learner used for the external fit.
        columns: Trial covariates matching external_x's columns (all by default).

    Raises:
        InvalidInputError: If the external data is empty or misaligned.
    """
    external_x = np.asarray(external_x, dtype=float)
    if external_x.ndim == 1:
        external_x = external_x.reshape(-1, 1)
    external_y = np.asarray(external_y, dtype=float).reshape(-1)
    if external_x.shape[0] == 0 or external_y.size == 0:
        raise InvalidInputError("External data is empty")
    indices = (
        list(range(trial.p))
        if columns is None
        else [trial.column_index(c) for c in columns]
    )
    if external_x.shape[1] != len(indices):
        raise InvalidInputError(
            f"External data has {external_x.shape[1]} covariates, "
            f"expected {len(indices)}"
        )
    model = get_learner(spec).fit(external_x, external_y)
    kind = spec.kind.value
    return ProxyMatrix(
        values=model.predict(trial.x[:, indices]).reshape(-1, 1),
        labels=(f"external:{kind}",),
        builder=f"external:{kind}",
    )


def estimate_power_exponent(trial: Trial, column) -> float:
    """
    Slope beta of the OLS fit log(Y + 1) = alpha + beta * log(X + 1).

    Raises:
        InvalidInputError: If Y or X has values at or below -1.
    """
    j = trial.column_index(column)
    x = trial.x[:, j]
    if (trial.y <= -1).any() or (x <= -1).any():
        raise InvalidInputError("log(v + 1) needs values above -1")
    log_x = np.log1p(x)
    log_y = np.log1p(trial.y)
    if np.ptp(log_x) == 0:
        raise InvalidInputError(f"Covariate {trial.covariate_names[j]!r} is constant")
    model = get_learner(LearnerSpec(kind="ols")).fit(log_x, log_y)
    beta = float(model.coef[0])
    logger.info(f"Estimated power exponent {beta:.4f} for {trial.covariate_names[j]}")
    return beta
