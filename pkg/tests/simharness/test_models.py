import numpy as np
import pytest
from scipy import linalg

from design import DesignSpec, make_rng
from errors import InvalidSpecError
from simharness import (
    MODELS,
    LinearModel,
    ModelSpec,
    apply_interactions,
    covariance_root,
    generate,
    get_model,
    interaction_plan,
    true_tau_with_se,
)


@pytest.mark.parametrize("kind", ["equicorrelated", "toeplitz"])
def test_covariance_root_squares_to_the_covariance(kind):
    root = covariance_root(kind, 6)
    if kind == "equicorrelated":
        expected = np.full((6, 6), 0.2) + 0.8 * np.eye(6)
    else:
        expected = linalg.toeplitz(0.5 ** np.arange(6))
    np.testing.assert_allclose(root @ root, expected, atol=1e-12)
    with pytest.raises(ValueError):
        root[0, 0] = 1.0


def test_linear_model_closed_form():
    assert LinearModel.closed_form_tau() == pytest.approx(-138.2857142857, abs=1e-9)


def test_linear_model_oracle_agrees_with_closed_form():
    tau, se = true_tau_with_se(1, draws=200_000, seed=3)
    assert abs(tau - LinearModel.closed_form_tau()) <= 4 * se


@pytest.mark.parametrize(
    "model_id, strata",
    [(1, {1, 2, 3, 4}), (2, {1, 2, 3, 4}), (3, {1, 2}), (4, {-1, 1})],
)
def test_draw_shapes_and_strata(model_id, strata):
    model = get_model(model_id)
    x, s = model.draw(make_rng(0), 500, 10)
    assert x.shape == (500, 10)
    assert set(np.unique(s)) == strata
    assert np.all(np.isfinite(model.g0(x, s)))
    assert np.all(np.isfinite(model.g1(x, s)))


def test_standard_covariate_supports():
    x, _ = get_model(1).draw(make_rng(1), 2000, 8)
    assert np.all((x[:, 0] > 0) & (x[:, 0] < 1))
    assert np.all(np.abs(x[:, 1]) <= 2)
    assert set(np.unique(x[:, 2])) == {-1.0, 1.0}
    assert set(np.unique(x[:, 3])) == {3.0, 5.0}
    assert np.corrcoef(x[:, 4], x[:, 5])[0, 1] == pytest.approx(0.2, abs=0.08)


def test_heavy_tailed_errors_for_model_three():
    e0, _ = get_model(3).draw_errors(make_rng(2), 20_000)
    assert np.abs(e0).max() > 20


def test_interaction_plan():
    columns, multipliers = interaction_plan(make_rng(4), 30)
    assert len(columns) == 10
    assert len(set(columns)) == 10
    assert columns.min() >= 2 and columns.max() <= 29
    assert set(multipliers) <= {0, 1}


def test_apply_interactions_multiplies_selected_columns():
    x = np.arange(1.0, 13.0).reshape(2, 6)
    plan = (np.array([3, 5]), np.array([0, 1]))
    observed = apply_interactions(x, plan)
    np.testing.assert_array_equal(observed[:, 3], x[:, 3] * x[:, 0])
    np.testing.assert_array_equal(observed[:, 5], x[:, 5] * x[:, 1])
    np.testing.assert_array_equal(observed[:, [0, 1, 2, 4]], x[:, [0, 1, 2, 4]])
    assert x[0, 3] == 4.0


@pytest.mark.parametrize("model_id", sorted(MODELS))
def test_generate_is_deterministic(model_id):
    spec = ModelSpec(model_id=model_id, n=200, p=9, seed=5)
    first, _ = generate(spec, rep=2, with_tau=False)
    second, _ = generate(spec, rep=2, with_tau=False)
    np.testing.assert_array_equal(first.y, second.y)
    np.testing.assert_array_equal(first.a, second.a)
    np.testing.assert_array_equal(first.x, second.x)
    other, _ = generate(spec, rep=3, with_tau=False)
    assert not np.array_equal(first.y, other.y)
    assert first.covariate_names[-1] == "x9"


def test_generate_uses_the_design():
    spec = ModelSpec(model_id=3, n=600, p=4, design=DesignSpec(block_size=4))
    trial, tau = generate(spec, rep=0, with_tau=False)
    assert np.isnan(tau)
    for k in range(1, trial.num_strata + 1):
        members = trial.a[trial.stratum == k]
        assert abs(2 * members.sum() - members.size) <= 4


def test_frozen_interactions_share_one_plan():
    spec = ModelSpec(model_id=2, n=100, p=12, seed=1, freeze_interactions=True)
    columns, _ = interaction_plan(make_rng(1, 4), 12)
    # X_3 and X_4 keep their discrete support unless interacted
    supports = {2: {-1.0, 1.0}, 3: {3.0, 5.0}}
    for rep in (0, 1):
        trial, _ = generate(spec, rep=rep, with_tau=False)
        for j, support in supports.items():
            assert (set(np.unique(trial.x[:, j])) <= support) == (j not in columns)


@pytest.mark.parametrize("kwargs", [dict(model_id=9), dict(p=3), dict(n=10)])
def test_model_spec_validation(kwargs):
    with pytest.raises(InvalidSpecError):
        ModelSpec(**kwargs)
