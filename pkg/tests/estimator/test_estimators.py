import numpy as np
import pytest

from calibration import build_constraints, solve_quadratic
from errors import DegenerateStratumError, InvalidInputError
from estimator import (
    AteReport,
    aipw_ate,
    calibrate_ate,
    cross_fit_ate,
    residuals,
    sdim,
    sdim_report,
)
from proxy import (
    ProxyContext,
    ProxyMatrix,
    Trial,
    build_proxy,
    cross_fit_split,
    make_proxy_builder,
    parse_proxy_expression,
    stratum_arm_means,
)


@pytest.fixture
def within_builder():
    return make_proxy_builder(parse_proxy_expression("within:ols"), ProxyContext())


def test_sdim_hand_instance():
    trial = Trial(
        y=[3.0, 1.0, 10.0, 2.0, 4.0, 0.0],
        a=[1, 0, 1, 0, 1, 0],
        stratum=[1, 1, 2, 2, 2, 2],
        x=np.zeros((6, 1)),
    )
    # stratum 1: 3 - 1, stratum 2: 7 - 1
    assert sdim(trial) == pytest.approx(2.0 * 2 / 6 + 6.0 * 4 / 6)


def test_residuals_sum_to_zero(make_trial):
    trial = make_trial(n=151, num_strata=4)
    assert residuals(trial).sum() == pytest.approx(0.0, abs=1e-9)


def test_sdim_report(make_trial):
    trial = make_trial()
    report = sdim_report(trial)
    assert report.method == "sdim"
    assert report.d == 0
    assert report.tau_hat == sdim(trial)
    assert report.var_explained == 0
    assert report.ci_low < report.tau_hat < report.ci_high
    assert report.se == pytest.approx(np.sqrt((report.var_h + report.var_y) / trial.n))


def test_calibration_shrinks_the_standard_error(make_trial):
    trial = make_trial(n=400, num_strata=3, p=2)
    proxy = build_proxy("within:ols", trial, ProxyContext())
    calibrated = calibrate_ate(trial, proxy)
    baseline = sdim_report(trial)
    assert calibrated.method == "cal:quadratic"
    assert calibrated.d == 2
    assert calibrated.se < 0.6 * baseline.se
    assert calibrated.diagnostics["constraint_residual"] <= 1e-8
    assert calibrated.diagnostics["converged"]


@pytest.mark.parametrize("disc", ["exp-tilting", "emp-likelihood"])
def test_general_discrepancies_agree_closely_with_quadratic(make_trial, disc):
    trial = make_trial(n=600, num_strata=2, p=2)
    proxy = build_proxy("raw:x1,x2", trial, ProxyContext())
    quadratic = calibrate_ate(trial, proxy).tau_hat
    other = calibrate_ate(trial, proxy, disc)
    assert other.method == f"cal:{disc}"
    assert other.diagnostics["all_positive_weights"]
    assert other.tau_hat == pytest.approx(quadratic, abs=0.1)


def test_aipw_with_stratum_arm_means_is_sdim(make_trial):
    trial = make_trial(num_strata=4)
    h1, h0 = stratum_arm_means(trial)
    report = aipw_ate(trial, h1, h0)
    assert report.method == "aipw"
    assert report.tau_hat == pytest.approx(sdim(trial), abs=1e-10)


def test_aipw_rejects_misaligned_fits(make_trial):
    trial = make_trial()
    with pytest.raises(InvalidInputError):
        aipw_ate(trial, np.zeros(3), np.zeros(trial.n))
    with pytest.raises(InvalidInputError):
        aipw_ate(trial, np.full(trial.n, np.nan), np.zeros(trial.n))


def test_cross_fit(make_trial, within_builder):
    trial = make_trial(n=400, num_strata=2, p=2)
    report = cross_fit_ate(trial, within_builder, seed=3)
    folds = report.diagnostics["fold_estimates"]
    assert report.method == "cal_cf:quadratic"
    assert len(folds) == 2
    assert report.tau_hat == pytest.approx(np.mean(folds))
    assert report.se == pytest.approx(np.sqrt(sum(s**2 for s in report.diagnostics["fold_se"])) / 2)
    assert report.se < sdim_report(trial).se
    again = cross_fit_ate(trial, within_builder, seed=3)
    assert again.tau_hat == report.tau_hat


def test_cross_fit_needs_full_cells(within_builder):
    trial = Trial([1.0, 2.0, 3.0, 4.0], [1, 0, 0, 0], [1, 1, 1, 1], np.arange(4.0))
    with pytest.raises(DegenerateStratumError):
        cross_fit_ate(trial, within_builder)


def test_report_rows_and_coverage(make_trial):
    report = sdim_report(make_trial())
    row = report.as_row()
    assert list(row) == [
        "method", "estimate", "se", "ci_low", "ci_high",
        "var_h", "var_y", "var_explained", "n", "K", "d",
    ]
    assert report.covers(report.tau_hat)
    assert not report.covers(report.ci_high + 1.0)
    assert isinstance(report, AteReport)


def _with_outcome(trial, y):
    return Trial(y, trial.a, trial.stratum, trial.x, trial.covariate_names)


@pytest.mark.parametrize("disc", ["quadratic", "exp-tilting", "emp-likelihood"])
def test_calibration_ignores_outcome_shifts(make_trial, disc):
    trial = make_trial(n=300, num_strata=3, p=2, seed=11)
    proxy = build_proxy("raw:x1,x2", trial, ProxyContext())
    base = calibrate_ate(trial, proxy, disc)
    shifted = calibrate_ate(_with_outcome(trial, trial.y + 250.0), proxy, disc)
    assert shifted.tau_hat == pytest.approx(base.tau_hat, abs=1e-10)
    assert shifted.se == pytest.approx(base.se, rel=1e-8)


@pytest.mark.parametrize("scale", [3.0, -0.5])
def test_calibration_scales_with_the_outcome(make_trial, scale):
    trial = make_trial(n=300, num_strata=3, p=2, seed=12)
    proxy = build_proxy("within:ols", trial, ProxyContext())
    base = calibrate_ate(trial, proxy)
    scaled_trial = _with_outcome(trial, scale * trial.y)
    scaled = calibrate_ate(scaled_trial, build_proxy("within:ols", scaled_trial, ProxyContext()))
    assert scaled.tau_hat == pytest.approx(scale * base.tau_hat, rel=1e-9)
    assert scaled.se == pytest.approx(abs(scale) * base.se, rel=1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_quadratic_calibration_closed_form(make_trial, seed):
    trial = make_trial(n=250, num_strata=4, p=3, seed=seed)
    proxy = ProxyMatrix(trial.x, ("a", "b", "c"), "test")
    cs = build_constraints(trial, proxy)
    lambda_hat = solve_quadratic(cs).lambda_hat
    correction = (residuals(trial) @ cs.xi_blocks / trial.n) @ lambda_hat
    expected = sdim(trial) - correction
    assert calibrate_ate(trial, proxy).tau_hat == pytest.approx(expected, abs=1e-10)


def test_aipw_without_fits_is_stratified_ipw(make_trial):
    trial = make_trial(n=203, num_strata=3, seed=4)
    zeros = np.zeros(trial.n)
    expected = 0.0
    for k in range(1, trial.num_strata + 1):
        rows = trial.stratum == k
        a, y = trial.a[rows], trial.y[rows]
        pi = a.mean()
        expected += np.sum(a * y / pi - (1 - a) * y / (1 - pi))
    expected /= trial.n
    assert aipw_ate(trial, zeros, zeros).tau_hat == pytest.approx(expected, abs=1e-10)


def _fold_trials(trial, fold_ids, fold):
    return (
        trial.subset(np.flatnonzero(fold_ids != fold)),
        trial.subset(np.flatnonzero(fold_ids == fold)),
    )


def test_cross_fit_with_a_constant_proxy_averages_fold_sdims(make_trial):
    trial = make_trial(n=240, num_strata=3, seed=5)

    def constant(train, target):
        return ProxyMatrix(np.ones((target.n, 1)), ("one",), "constant")

    report = cross_fit_ate(trial, constant, seed=9)
    fold_ids = cross_fit_split(trial, folds=2, seed=9)
    fold_sdims = [sdim(_fold_trials(trial, fold_ids, fold)[1]) for fold in (0, 1)]
    assert report.tau_hat == pytest.approx(0.5 * sum(fold_sdims), abs=1e-12)


def test_cross_fit_averages_fold_calibrations(make_trial, within_builder):
    trial = make_trial(n=320, num_strata=2, p=2, seed=6)
    report = cross_fit_ate(trial, within_builder, seed=3)
    fold_ids = cross_fit_split(trial, folds=2, seed=3)
    fold_taus = []
    for fold in (0, 1):
        train, target = _fold_trials(trial, fold_ids, fold)
        fold_taus.append(calibrate_ate(target, within_builder(train, target)).tau_hat)
    np.testing.assert_allclose(report.diagnostics["fold_estimates"], fold_taus, atol=1e-12)
    assert report.tau_hat == pytest.approx(np.mean(fold_taus), abs=1e-12)
