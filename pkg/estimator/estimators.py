"""
Point estimators of the average treatment effect.

    sdim            stratified difference in means
    calibrate_ate   sdim plus the calibration-weighted residual correction
    cross_fit_ate   two-fold version with proxies fit on the opposite fold
    aipw_ate        stratified augmented inverse-probability weighting
"""

import logging
from typing import Union

import numpy as np

from calibration import Discrepancy, build_constraints, calibrate, get_discrepancy
from errors import InvalidInputError
from inference import confidence_interval, normal_interval, variance_components
from proxy import ProxyBuilder, ProxyMatrix, Trial, cross_fit_split

from .report import AteReport


logger = logging.getLogger(__name__)


def sdim(trial: Trial) -> float:
    """sum_k p_k (Ybar_1[k] - Ybar_0[k])."""
    summary = trial.stratum_summary()
    return float(summary.p_k @ (summary.ybar1_k - summary.ybar0_k))


def residuals(trial: Trial) -> np.ndarray:
    """
    Inverse-share-weighted outcome deviations from the stratum-arm means.

    r_i = A_i / pi_k (Y_i - Ybar_1[k]) - (1 - A_i) / (1 - pi_k) (Y_i - Ybar_0[k])
    for i in stratum k; the r_i sum to zero.
    """
    summary = trial.stratum_summary()
    index = trial.stratum - 1
    pi = summary.pi_k[index]
    treated = trial.a == 1
    return np.where(
        treated,
        (trial.y - summary.ybar1_k[index]) / pi,
        -(trial.y - summary.ybar0_k[index]) / (1 - pi),
    )


def sdim_report(trial: Trial, level: float = 0.95) -> AteReport:
    """sdim with its variance (no explained part)."""
    tau = sdim(trial)
    vc = variance_components(trial)
    interval = confidence_interval(tau, vc, trial.n, level)
    return AteReport.build(
        "sdim", tau, interval, vc, trial.n, trial.num_strata, 0, level
    )


def calibrate_ate(
    trial: Trial,
    proxy: ProxyMatrix,
    disc: Union[str, Discrepancy] = "quadratic",
    level: float = 0.95,
    tol: float = 1e-8,
    max_iter: int = 100,
) -> AteReport:
    """
    Calibration estimator tau_sdim + (1/n) sum_i w_i r_i.

    Since the r_i sum to zero this is computed as sdim + mean((w - 1) r), so
    unit weights return sdim exactly.

    Raises:
        DegenerateStratumError: If a stratum lacks an arm.
        NonConvergenceError: If the dual solver fails.
        InferenceError: If the total variance is not positive.
    """
    disc = get_discrepancy(disc)
    cs = build_constraints(trial, proxy)
    result = calibrate(cs, disc, tol=tol, max_iter=max_iter)
    r = residuals(trial)
    tau = sdim(trial) + float(np.mean((result.weights - 1.0) * r))
    vc = variance_components(trial, cs=cs)
    interval = confidence_interval(tau, vc, trial.n, level)
    return AteReport.build(
        f"cal:{disc.name}",
        tau,
        interval,
        vc,
        trial.n,
        trial.num_strata,
        proxy.d,
        level,
        proxy_labels=proxy.labels,
        diagnostics={
            "builder": proxy.builder,
            "discrepancy": disc.name,
            "constraint_residual": result.constraint_residual,
            "iterations": result.iterations,
            "converged": result.converged,
            "all_positive_weights": result.all_positive,
            "min_weight": float(result.weights.min()),
            "ranks": vc.ranks.tolist(),
            "warnings": list(cs.warnings),
        },
    )


def cross_fit_ate(
    trial: Trial,
    proxy_builder: ProxyBuilder,
    disc: Union[str, Discrepancy] = "quadratic",
    seed: int = 0,
    level: float = 0.95,
    folds: int = 2,
) -> AteReport:
    """
    Cross-fitted calibration estimator.

    Units are split within (stratum, arm) cells. Each fold is calibrated with
    its own stratum shares, arm shares and arm means, using a proxy built by
    proxy_builder(train=other folds, target=this fold). The estimate is the
    fold average and its variance the mean of the fold variances over folds.

    Args:
        trial: The trial.
        proxy_builder: Callable (train, target) -> ProxyMatrix.
        disc: Discrepancy.
        seed: Seed of the fold split.
        level: Confidence level.
        folds: Number of folds.
    """
    fold_ids = cross_fit_split(trial, folds=folds, seed=seed)
    reports = []
    for fold in range(folds):
        inside = np.flatnonzero(fold_ids == fold)
        outside = np.flatnonzero(fold_ids != fold)
        target = trial.subset(inside)
        train = trial.subset(outside)
        proxy = proxy_builder(train, target)
        reports.append(calibrate_ate(target, proxy, disc, level=level))
        logger.debug(f"fold {fold}: tau {reports[-1].tau_hat:.6g}")

    tau = float(np.mean([r.tau_hat for r in reports]))
    se = float(np.sqrt(sum(r.se**2 for r in reports)) / folds)
    low, high = normal_interval(tau, se, level)
    disc = get_discrepancy(disc)
    return AteReport(
        method=f"cal_cf:{disc.name}",
        tau_hat=tau,
        se=se,
        ci_low=low,
        ci_high=high,
        var_h=float(np.mean([r.var_h for r in reports])),
        var_y=float(np.mean([r.var_y for r in reports])),
        var_explained=float(np.mean([r.var_explained for r in reports])),
        n=trial.n,
        num_strata=trial.num_strata,
        d=reports[0].d,
        level=level,
        proxy_labels=reports[0].proxy_labels,
        diagnostics={
            "folds": folds,
            "fold_estimates": [r.tau_hat for r in reports],
            "fold_se": [r.se for r in reports],
            "iterations": max(r.diagnostics["iterations"] for r in reports),
            "constraint_residual": max(
                r.diagnostics["constraint_residual"] for r in reports
            ),
            "all_positive_weights": all(
                r.diagnostics["all_positive_weights"] for r in reports
            ),
        },
    )


def aipw_ate(trial: Trial, h1, h0, level: float = 0.95) -> AteReport:
    """
    Stratified AIPW with known stratum treatment shares.

    The standard error uses the calibration variance components with
    xi = (h1, h0).

    Raises:
        InvalidInputError: If h1 or h0 is misaligned or not finite.
    """
    h1 = np.asarray(h1, dtype=float).reshape(-1)
    h0 = np.asarray(h0, dtype=float).reshape(-1)
    if h1.shape != (trial.n,) or h0.shape != (trial.n,):
        raise InvalidInputError("h1 and h0 must have one value per unit")
    if not (np.all(np.isfinite(h1)) and np.all(np.isfinite(h0))):
        raise InvalidInputError("h1 and h0 must be finite")
    summary = trial.stratum_summary()
    pi = summary.pi_k[trial.stratum - 1]
    a, y = trial.a, trial.y
    scores = a / pi * (y - h1) - (1 - a) / (1 - pi) * (y - h0) + h1 - h0
    tau = float(scores.mean())
    proxy = ProxyMatrix(np.column_stack([h1, h0]), ("h1", "h0"), "aipw")
    vc = variance_components(trial, proxy=proxy)
    interval = confidence_interval(tau, vc, trial.n, level)
    return AteReport.build(
        "aipw", tau, interval, vc, trial.n, trial.num_strata, 2, level
    )
