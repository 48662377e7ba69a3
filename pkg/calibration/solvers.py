"""
Calibration weights from the dual problem.

The dual maximizes (1/n) sum_i rho(lambda' Xi_i); its stationarity condition is
exactly the balance constraint (1/n) sum_i rho'(lambda' Xi_i) Xi_i = 0.
"""

import logging
from dataclasses import dataclass

import numpy as np

from errors import InfeasibleDirectionError, InvalidInputError, NonConvergenceError
from linalg import pseudo_inverse, solve_positive_definite

from .constraints import ConstraintSystem
from .discrepancy import Discrepancy, DiscrepancyKind, Quadratic, get_discrepancy


logger = logging.getLogger(__name__)

ARMIJO_SHRINK = 0.5
ARMIJO_SLOPE = 1e-4
HESSIAN_RIDGE = 1e-10
MIN_STEP = 1e-12


@dataclass(frozen=True)
class CalibrationResult:
    lambda_hat: np.ndarray
    weights: np.ndarray
    constraint_residual: float
    iterations: int
    converged: bool
    objective: float
    discrepancy: DiscrepancyKind

    @property
    def all_positive(self) -> bool:
        return bool(np.all(self.weights > 0))


def _result(
    cs: ConstraintSystem,
    disc: Discrepancy,
    lambda_hat: np.ndarray,
    weights: np.ndarray,
    iterations: int,
) -> CalibrationResult:
    v = cs.xi_blocks @ lambda_hat
    return CalibrationResult(
        lambda_hat=lambda_hat,
        weights=weights,
        constraint_residual=float(np.abs(cs.balance(weights)).max()),
        iterations=iterations,
        converged=True,
        objective=float(disc.rho(v).mean()),
        discrepancy=disc.kind,
    )


def solve_quadratic(cs: ConstraintSystem) -> CalibrationResult:
    """
    Closed-form quadratic calibration.

    lambda = [(1/n) sum Xi Xi']^+ (1/n) sum Xi, evaluated as pinv(Xi) @ 1, which is
    the same minimum-norm solution. Weights are 1 - lambda' Xi_i.
    """
    xi = cs.xi_blocks
    lambda_hat = pseudo_inverse(xi) @ np.ones(cs.n)
    weights = 1.0 - xi @ lambda_hat
    return _result(cs, Quadratic(), lambda_hat, weights, iterations=0)


def solve_dual(
    cs: ConstraintSystem,
    disc,
    tol: float = 1e-8,
    max_iter: int = 100,
) -> CalibrationResult:
    """
    Maximize the dual by damped Newton with Armijo backtracking.

    Args:
        cs: Constraint system.
        disc: Discrepancy (or its name).
        tol: Stop once the gradient max-norm is at or below tol.
        max_iter: Newton iteration limit.

    Returns:
        The converged result, weights rho'(lambda' Xi_i).

    Raises:
        NonConvergenceError: If max_iter is reached or the line search stalls.
        InfeasibleDirectionError: If no step keeps every lambda' Xi_i inside the
            domain of rho.
    """
    if tol <= 0:
        raise InvalidInputError(f"tol must be positive, got {tol}")
    disc = get_discrepancy(disc)
    xi = cs.xi_blocks
    n, m = xi.shape
    lam = np.zeros(m)
    v = np.zeros(n)
    value = float(disc.rho(v).mean())

    for iteration in range(max_iter + 1):
        gradient = xi.T @ disc.rho_prime(v) / n
        residual = float(np.abs(gradient).max()) if m else 0.0
        if residual <= tol:
            logger.debug(f"{disc.name} dual converged in {iteration} iterations")
            return _result(cs, disc, lam, disc.rho_prime(v), iteration)
        if iteration == max_iter:
            break

        curvature = -disc.rho_second(v)
        hessian = (xi.T * curvature) @ xi / n
        direction = solve_positive_definite(hessian, gradient, ridge=HESSIAN_RIDGE)
        dv = xi @ direction
        slope = float(gradient @ direction)

        step = disc.max_step(v, dv)
        reached_domain = False
        while step >= MIN_STEP:
            v_new = v + step * dv
            if disc.in_domain(v_new):
                reached_domain = True
                value_new = float(disc.rho(v_new).mean())
                if value_new >= value + ARMIJO_SLOPE * step * slope:
                    break
                # Tolerance-level exception to strict ascent: near the optimum
                # the gain can fall below float resolution, so a step that
                # leaves the objective unchanged within 64 eps is accepted
                # when it shrinks the gradient. Any larger change must pass
                # the Armijo test above.
                if abs(value_new - value) <= 64 * np.finfo(float).eps * max(
                    1.0, abs(value)
                ):
                    new_gradient = xi.T @ disc.rho_prime(v_new) / n
                    if np.abs(new_gradient).max() < residual:
                        break
            step *= ARMIJO_SHRINK
        else:
            if not reached_domain:
                raise InfeasibleDirectionError(
                    f"No step along the Newton direction stays inside the "
                    f"{disc.name} domain"
                )
            raise NonConvergenceError(
                f"{disc.name} line search stalled at iteration {iteration}",
                last_iterate=lam,
                residual=residual,
                iterations=iteration,
            )
        lam = lam + step * direction
        v = v_new
        value = value_new

    raise NonConvergenceError(
        f"{disc.name} dual did not converge in {max_iter} iterations "
        f"(gradient max-norm {residual:.3g})",
        last_iterate=lam,
        residual=residual,
        iterations=max_iter,
    )


def calibrate(cs: ConstraintSystem, disc, tol: float = 1e-8, max_iter: int = 100):
    """Quadratic discrepancies use the closed form, the others the Newton dual."""
    disc = get_discrepancy(disc)
    if disc.kind is DiscrepancyKind.QUADRATIC:
        return solve_quadratic(cs)
    return solve_dual(cs, disc, tol=tol, max_iter=max_iter)
