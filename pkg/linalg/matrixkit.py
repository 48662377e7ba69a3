"""
Dense real matrix utilities: SVD pseudoinverse, numerical rank, linear solves.

Rank and pseudoinverse are always read off the same singular value
decomposition, so the two are mutually consistent.
"""

from typing import Tuple

import numpy as np
from scipy import linalg

from errors import InvalidInputError


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise InvalidInputError(f"Expected a non-empty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("Matrix contains non-finite entries")
    return a


def default_tolerance(shape: Tuple[int, int]) -> float:
    """Standard SVD cutoff: max(rows, cols) times machine epsilon."""
    return max(shape) * np.finfo(float).eps


def _cutoff(a: np.ndarray, singular_values: np.ndarray, rel_tol: float) -> float:
    if rel_tol < 0:
        raise InvalidInputError(f"rel_tol must be non-negative, got {rel_tol}")
    if rel_tol == 0:
        rel_tol = default_tolerance(a.shape)
    sigma_max = singular_values.max() if singular_values.size else 0.0
    return rel_tol * sigma_max


def pseudo_inverse_with_rank(m, rel_tol: float = 0.0) -> Tuple[np.ndarray, int]:
    """
    Moore-Penrose inverse and numerical rank from one SVD.

    Args:
        m: Finite real matrix.
        rel_tol: Relative cutoff; singular values at or below rel_tol * sigma_max
            are treated as zero. 0 selects the default tolerance.

    Returns:
        A tuple (pinv, rank).

    Raises:
        InvalidInputError: If the matrix is empty or has non-finite entries.
    """
    a = _as_matrix(m)
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    keep = s > _cutoff(a, s, rel_tol)
    s_inv = np.zeros_like(s)
    s_inv[keep] = 1.0 / s[keep]
    return (vt.T * s_inv) @ u.T, int(keep.sum())


def pseudo_inverse(m, rel_tol: float = 0.0) -> np.ndarray:
    """Moore-Penrose inverse via SVD."""
    pinv, _ = pseudo_inverse_with_rank(m, rel_tol)
    return pinv


def numerical_rank(m, rel_tol: float = 0.0) -> int:
    """Number of singular values above rel_tol * sigma_max (0 for a zero matrix)."""
    a = _as_matrix(m)
    s = np.linalg.svd(a, compute_uv=False)
    return int((s > _cutoff(a, s, rel_tol)).sum())


def solve_positive_definite(a, b, ridge: float = 0.0) -> np.ndarray:
    """Solve (a + ridge * I) x = b for symmetric positive (semi)definite a."""
    a = _as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"Expected a square matrix, got shape {a.shape}")
    b = np.asarray(b, dtype=float)
    if not np.all(np.isfinite(b)):
        raise InvalidInputError("Right-hand side contains non-finite entries")
    system = a + ridge * np.eye(a.shape[0])
    try:
        return linalg.solve(system, b, assume_a="pos")
    except linalg.LinAlgError:
        # Loses definiteness only through roundoff; fall back to the SVD route.
        return pseudo_inverse(system) @ b
