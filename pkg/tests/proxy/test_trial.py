import numpy as np
import pytest

from errors import DegenerateStratumError, InvalidInputError
from proxy import Trial, canonical_strata, stratum_arm_means


def test_canonical_strata_follow_first_appearance():
    codes, names = canonical_strata(["b", "a", "b", "c"])
    np.testing.assert_array_equal(codes, [1, 2, 1, 3])
    assert names == ("b", "a", "c")


def test_from_labels_keeps_names():
    trial = Trial.from_labels(
        [1.0, 2.0, 3.0, 4.0], [1, 0, 1, 0], ["s2", "s2", "s1", "s1"], [[0], [1], [2], [3]]
    )
    assert trial.num_strata == 2
    assert trial.stratum_names == ("s2", "s1")
    assert trial.covariate_names == ("x1",)


def test_summary_counts_and_means():
    trial = Trial(
        y=[1.0, 3.0, 10.0, 2.0, 4.0, 6.0],
        a=[1, 1, 0, 1, 0, 0],
        stratum=[1, 1, 1, 2, 2, 2],
        x=np.zeros((6, 1)),
    )
    summary = trial.stratum_summary()
    np.testing.assert_array_equal(summary.n_k, [3, 3])
    np.testing.assert_array_equal(summary.n1_k, [2, 1])
    np.testing.assert_allclose(summary.p_k, [0.5, 0.5])
    np.testing.assert_allclose(summary.pi_k, [2 / 3, 1 / 3])
    np.testing.assert_allclose(summary.ybar1_k, [2.0, 2.0])
    np.testing.assert_allclose(summary.ybar0_k, [10.0, 5.0])
    fitted1, fitted0 = stratum_arm_means(trial, summary)
    np.testing.assert_allclose(fitted1, [2, 2, 2, 2, 2, 2])
    np.testing.assert_allclose(fitted0, [10, 10, 10, 5, 5, 5])


def test_summary_rejects_single_arm_stratum():
    trial = Trial([1.0, 2.0, 3.0], [1, 1, 0], [1, 1, 2], np.zeros((3, 1)))
    with pytest.raises(DegenerateStratumError) as error:
        trial.stratum_summary()
    assert error.value.stratum == 1
    assert trial.stratum_summary(require_both_arms=False).n0_k[0] == 0


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(y=[1.0, 2.0], a=[1, 2], stratum=[1, 1], x=[[0], [0]]),
        dict(y=[1.0, np.nan], a=[1, 0], stratum=[1, 1], x=[[0], [0]]),
        dict(y=[1.0, 2.0], a=[1, 0], stratum=[1, 3], x=[[0], [0]]),
        dict(y=[1.0, 2.0, 3.0, 4.0], a=[1, 1, 0, 0], stratum=[-1, -1, 0, 0], x=np.zeros((4, 1))),
        dict(y=[1.0, 2.0], a=[1, 0], stratum=[0, 1], x=[[0], [0]]),
        dict(y=[1.0, 2.0], a=[1, 0, 1], stratum=[1, 1], x=[[0], [0]]),
        dict(y=[], a=[], stratum=[], x=np.zeros((0, 1))),
    ],
)
def test_invalid_trials(kwargs):
    with pytest.raises(InvalidInputError):
        Trial(**kwargs)


def test_column_index(make_trial):
    trial = make_trial(p=3)
    assert trial.column_index("x2") == 1
    assert trial.column_index(2) == 2
    assert trial.column_index("0") == 0
    with pytest.raises(InvalidInputError):
        trial.column_index("age")
    with pytest.raises(InvalidInputError):
        trial.column_index(5)


def test_subset_keeps_codes_and_rejects_lost_strata(make_trial):
    trial = make_trial(n=30, num_strata=3)
    kept = trial.subset(np.arange(0, 30, 2))
    assert kept.num_strata == 3
    assert kept.stratum_names == trial.stratum_names
    with pytest.raises(DegenerateStratumError):
        trial.subset(np.flatnonzero(trial.stratum != 2))


def test_with_outcome_replaces_only_y(make_trial):
    trial = make_trial()
    other = trial.with_outcome(np.zeros(trial.n))
    assert np.all(other.y == 0)
    np.testing.assert_array_equal(other.a, trial.a)
    np.testing.assert_array_equal(other.x, trial.x)
