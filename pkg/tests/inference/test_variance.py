import numpy as np
import pytest

from calibration import build_constraints
from errors import InferenceError, InsufficientDfError, InvalidInputError
from inference import (
    VarianceComponents,
    confidence_interval,
    normal_interval,
    variance_components,
)
from proxy import ProxyMatrix, Trial


@pytest.fixture
def tiny_trial():
    return Trial(
        y=[1.0, 3.0, 2.0, 6.0],
        a=[1, 1, 0, 0],
        stratum=[1, 1, 1, 1],
        x=[[0.0], [1.0], [0.0], [2.0]],
    )


def test_outcome_variance_by_hand(tiny_trial):
    plain = variance_components(tiny_trial, adjust_df=False)
    # ms1 = 1, ms0 = 4 at pi = 1/2
    assert plain.var_y == pytest.approx(10.0)
    assert plain.var_h == 0.0
    assert plain.var_explained == 0.0
    adjusted = variance_components(tiny_trial)
    assert adjusted.var_y == pytest.approx(40.0 / 3)
    np.testing.assert_allclose(adjusted.df_factors, [4.0 / 3])
    np.testing.assert_array_equal(adjusted.ranks, [0])


def test_explained_variance_by_hand(tiny_trial):
    proxy = ProxyMatrix(tiny_trial.x, ("x1",), "test")
    vc = variance_components(tiny_trial, proxy=proxy, adjust_df=False)
    # gamma = 1.25, sigma = 0.171875
    assert vc.var_explained == pytest.approx(100.0 / 11)
    assert vc.total == pytest.approx(10.0 - 100.0 / 11)
    np.testing.assert_array_equal(vc.ranks, [1])


def test_heterogeneity_by_hand():
    trial = Trial(
        y=[3.0, 1.0, 10.0, 2.0], a=[1, 0, 1, 0], stratum=[1, 1, 2, 2], x=np.zeros((4, 1))
    )
    vc = variance_components(trial, adjust_df=False)
    # stratum contrasts 2 and 8 around the overall contrast 5
    assert vc.var_h == pytest.approx(9.0)
    assert vc.var_y == 0.0


def test_rank_exhausts_degrees_of_freedom():
    trial = Trial(
        y=[1.0, 2.0, 3.0, 4.0, 5.0, 7.0],
        a=[1, 0, 1, 0, 1, 0],
        stratum=[1, 1, 2, 2, 2, 2],
        x=[[0.0], [1.0], [0.5], [1.5], [2.0], [0.0]],
    )
    proxy = ProxyMatrix(trial.x, ("x1",), "test")
    with pytest.raises(InsufficientDfError) as error:
        variance_components(trial, proxy=proxy)
    assert error.value.stratum == 1
    assert variance_components(trial, proxy=proxy, adjust_df=False).ranks.tolist() == [1, 1]


def test_explained_part_is_nonnegative(make_trial):
    trial = make_trial(n=300, num_strata=3, p=3)
    proxy = ProxyMatrix(trial.x, ("a", "b", "c"), "test")
    vc = variance_components(trial, proxy=proxy)
    assert vc.var_explained >= 0
    assert vc.total < variance_components(trial).total
    np.testing.assert_array_equal(vc.ranks, [3, 3, 3])
    np.testing.assert_allclose(vc.df_factors, [100 / 96] * 3)


def test_constraint_system_must_align(make_trial):
    trial = make_trial(n=100)
    other = make_trial(n=90)
    cs = build_constraints(other, ProxyMatrix(other.x, ("a", "b"), "test"))
    with pytest.raises(InvalidInputError):
        variance_components(trial, cs=cs)


def test_normal_interval():
    low, high = normal_interval(1.0, 2.0, 0.95)
    assert high - 1.0 == pytest.approx(1.959963984540054 * 2.0)
    assert 1.0 - low == pytest.approx(high - 1.0)
    with pytest.raises(InvalidInputError):
        normal_interval(0.0, 1.0, 1.0)


def test_confidence_interval_from_components():
    vc = VarianceComponents(1.0, 3.0, 0.0, np.zeros(1, dtype=int), np.ones(1))
    low, high, se = confidence_interval(0.0, vc, n=100, level=0.9)
    assert se == pytest.approx(0.2)
    assert high == pytest.approx(1.6448536269514722 * 0.2)


def test_non_positive_total_variance():
    vc = VarianceComponents(0.0, 1.0, 2.0, np.ones(1, dtype=int), np.ones(1))
    with pytest.raises(InferenceError) as error:
        confidence_interval(0.0, vc, n=10)
    assert error.value.components["total"] == -1.0


@pytest.mark.parametrize("seed", range(6))
def test_extra_proxy_columns_never_lower_the_explained_part(make_trial, seed):
    trial = make_trial(n=240, num_strata=3, p=3, seed=seed)
    extra = np.random.default_rng(seed + 100).normal(size=trial.n)
    columns = [trial.x[:, 0], trial.x[:, 1], trial.x[:, 2], trial.x[:, 0] ** 2, extra]
    explained = []
    for d in range(1, len(columns) + 1):
        labels = tuple(f"c{j}" for j in range(d))
        proxy = ProxyMatrix(np.column_stack(columns[:d]), labels, "test")
        vc = variance_components(trial, proxy=proxy, adjust_df=False)
        explained.append(vc.var_explained)
    assert np.all(np.diff(explained) >= -1e-12)


@pytest.mark.parametrize("permutation", [(2, 3, 1), (3, 1, 2), (3, 2, 1)])
@pytest.mark.parametrize("with_proxy", [False, True])
def test_stratum_relabeling_leaves_components_unchanged(make_trial, permutation, with_proxy):
    trial = make_trial(n=210, num_strata=3, p=2, seed=8)
    relabeled = Trial(trial.y, trial.a, np.asarray(permutation)[trial.stratum - 1], trial.x)

    def components(t):
        proxy = ProxyMatrix(t.x, ("a", "b"), "test") if with_proxy else None
        return variance_components(t, proxy=proxy)

    base, moved = components(trial), components(relabeled)
    assert moved.var_y == pytest.approx(base.var_y, rel=1e-12)
    assert moved.var_h == pytest.approx(base.var_h, rel=1e-12)
    assert moved.var_explained == pytest.approx(base.var_explained, rel=1e-10, abs=1e-14)
    np.testing.assert_array_equal(np.sort(moved.ranks), np.sort(base.ranks))
