import numpy as np
import pytest

from errors import InvalidInputError
from linalg import (
    default_tolerance,
    numerical_rank,
    pseudo_inverse,
    pseudo_inverse_with_rank,
    solve_positive_definite,
)


def penrose_residual(m, p):
    return max(
        np.abs(m @ p @ m - m).max(),
        np.abs(p @ m @ p - p).max(),
        np.abs(m @ p - (m @ p).T).max(),
        np.abs(p @ m - (p @ m).T).max(),
    )


def test_pseudo_inverse_identity():
    np.testing.assert_allclose(pseudo_inverse(np.eye(3)), np.eye(3))


def test_pseudo_inverse_singular_diagonal():
    np.testing.assert_allclose(pseudo_inverse(np.diag([2.0, 0.0])), np.diag([0.5, 0.0]))


def test_pseudo_inverse_rank_two_penrose_conditions():
    rng = np.random.default_rng(1)
    m = rng.normal(size=(4, 2)) @ rng.normal(size=(2, 3))
    p = pseudo_inverse(m)
    assert penrose_residual(m, p) <= 1e-10


def test_pseudo_inverse_random_matrices_penrose_bound():
    rng = np.random.default_rng(2)
    for _ in range(20):
        rows, cols = rng.integers(1, 51, size=2)
        rank = rng.integers(1, min(rows, cols) + 1)
        m = rng.normal(size=(rows, rank)) @ rng.normal(size=(rank, cols))
        p = pseudo_inverse(m)
        assert penrose_residual(m, p) <= 1e-8 * (1 + np.abs(m).sum(axis=1).max())


def test_pseudo_inverse_of_spd_matrix_is_inverse():
    rng = np.random.default_rng(3)
    b = rng.normal(size=(6, 6))
    m = b @ b.T + 6 * np.eye(6)
    inverse = np.linalg.inv(m)
    assert np.abs(pseudo_inverse(m) - inverse).max() <= 1e-8 * np.abs(inverse).max()


def test_rank_and_inverse_come_from_one_decomposition():
    m = np.outer([1.0, 2.0, 3.0], [1.0, -1.0])
    p, rank = pseudo_inverse_with_rank(m)
    assert rank == 1
    np.testing.assert_allclose(p, pseudo_inverse(m))


def test_numerical_rank_examples():
    rng = np.random.default_rng(4)
    assert numerical_rank(np.eye(4)) == 4
    assert numerical_rank(np.outer(rng.normal(size=5), rng.normal(size=3))) == 1
    b = rng.normal(size=(5, 3))
    assert numerical_rank(b @ b.T) == 3


def test_numerical_rank_of_zero_matrix():
    assert numerical_rank(np.zeros((3, 2))) == 0


def test_numerical_rank_invariances():
    rng = np.random.default_rng(5)
    m = rng.normal(size=(6, 2)) @ rng.normal(size=(2, 5))
    assert numerical_rank(m[rng.permutation(6)][:, rng.permutation(5)]) == 2
    assert numerical_rank(-3.5 * m) == 2


def test_explicit_tolerance_drops_small_singular_values():
    m = np.diag([1.0, 1e-6])
    assert numerical_rank(m) == 2
    assert numerical_rank(m, rel_tol=1e-3) == 1


def test_default_tolerance():
    assert default_tolerance((10, 3)) == 10 * np.finfo(float).eps


@pytest.mark.parametrize("bad", [np.array([[1.0, np.nan]]), np.array([[np.inf]])])
def test_non_finite_input_rejected(bad):
    with pytest.raises(InvalidInputError):
        pseudo_inverse(bad)
    with pytest.raises(InvalidInputError):
        numerical_rank(bad)


def test_negative_tolerance_rejected():
    with pytest.raises(InvalidInputError):
        pseudo_inverse(np.eye(2), rel_tol=-1.0)


def test_solve_positive_definite():
    a = np.array([[4.0, 1.0], [1.0, 3.0]])
    b = np.array([1.0, 2.0])
    np.testing.assert_allclose(solve_positive_definite(a, b), np.linalg.solve(a, b))


def test_solve_positive_definite_falls_back_on_singular_matrix():
    a = np.array([[1.0, 1.0], [1.0, 1.0]])
    b = np.array([2.0, 2.0])
    x = solve_positive_definite(a, b)
    np.testing.assert_allclose(a @ x, b, atol=1e-10)
