"""
Discrepancy measures D(v) and their dual transforms rho(v).

    quadratic        D(v) = (v - 1)^2 / 2   rho(v) = -v^2 / 2 + v
    exp-tilting      D(v) = v log v - v     rho(v) = -exp(-v)
    emp-likelihood   D(v) = v - log v       rho(v) = 1 + log(1 + v),  v > -1

All three satisfy rho'(0) = 1 and rho''(0) = -1, so calibration weights
rho'(lambda' Xi_i) equal one when the constraints are already balanced.
"""

import enum
from abc import ABC, abstractmethod
from typing import Dict, Tuple, Type, Union

import numpy as np

from errors import ConfigError


@enum.unique
class DiscrepancyKind(str, enum.Enum):
    QUADRATIC = "quadratic"
    EXP_TILTING = "exp-tilting"
    EMP_LIKELIHOOD = "emp-likelihood"


class Discrepancy(ABC):
    """Base class for the dual transform of a discrepancy measure."""

    @property
    @abstractmethod
    def kind(self) -> DiscrepancyKind:
        """Which discrepancy this is."""

    @property
    def lower_bound(self) -> float:
        """rho is defined on the open interval (lower_bound, inf)."""
        return -np.inf

    @abstractmethod
    def rho(self, v: np.ndarray) -> np.ndarray:
        """Dual transform."""

    @abstractmethod
    def rho_prime(self, v: np.ndarray) -> np.ndarray:
        """First derivative; the calibration weight at v."""

    @abstractmethod
    def rho_second(self, v: np.ndarray) -> np.ndarray:
        """Second derivative, strictly negative on the domain."""

    def in_domain(self, v: np.ndarray) -> bool:
        return bool(np.all(np.asarray(v) > self.lower_bound))

    def max_step(self, v: np.ndarray, direction: np.ndarray) -> float:
        """Largest step length in (0, 1] to try along direction from v."""
        return 1.0

    @property
    def name(self) -> str:
        return self.kind.value

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class Quadratic(Discrepancy):
    @property
    def kind(self) -> DiscrepancyKind:
        return DiscrepancyKind.QUADRATIC

    def rho(self, v):
        v = np.asarray(v, dtype=float)
        return -0.5 * v**2 + v

    def rho_prime(self, v):
        return 1.0 - np.asarray(v, dtype=float)

    def rho_second(self, v):
        return np.full_like(np.asarray(v, dtype=float), -1.0)


class ExpTilting(Discrepancy):
    @property
    def kind(self) -> DiscrepancyKind:
        return DiscrepancyKind.EXP_TILTING

    def rho(self, v):
        with np.errstate(over="ignore"):
            return -np.exp(-np.asarray(v, dtype=float))

    def rho_prime(self, v):
        with np.errstate(over="ignore"):
            return np.exp(-np.asarray(v, dtype=float))

    def rho_second(self, v):
        with np.errstate(over="ignore"):
            return -np.exp(-np.asarray(v, dtype=float))

    def in_domain(self, v) -> bool:
        # exp(-v) overflows long before v reaches -inf
        return bool(np.all(np.isfinite(self.rho(v))))


class EmpiricalLikelihood(Discrepancy):
    """Empirical likelihood; every weight 1 / (1 + v) stays positive."""

    # Steps may shrink the smallest 1 + v by at most this factor.
    DOMAIN_SHRINK = 0.1

    @property
    def kind(self) -> DiscrepancyKind:
        return DiscrepancyKind.EMP_LIKELIHOOD

    @property
    def lower_bound(self) -> float:
        return -1.0

    def rho(self, v):
        v = np.asarray(v, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return 1.0 + np.log1p(v)

    def rho_prime(self, v):
        return 1.0 / (1.0 + np.asarray(v, dtype=float))

    def rho_second(self, v):
        return -1.0 / (1.0 + np.asarray(v, dtype=float)) ** 2

    def max_step(self, v, direction) -> float:
        slack = 1.0 + v
        floor = self.DOMAIN_SHRINK * slack.min()
        shrinking = direction < 0
        if not shrinking.any():
            return 1.0
        limits = (slack[shrinking] - floor) / -direction[shrinking]
        return float(min(1.0, limits.min()))


DISCREPANCIES: Dict[DiscrepancyKind, Type[Discrepancy]] = {
    DiscrepancyKind.QUADRATIC: Quadratic,
    DiscrepancyKind.EXP_TILTING: ExpTilting,
    DiscrepancyKind.EMP_LIKELIHOOD: EmpiricalLikelihood,
}


def get_discrepancy(kind: Union[str, DiscrepancyKind, Discrepancy]) -> Discrepancy:
    """
    Resolve a discrepancy by name.

    Raises:
        ConfigError: If the name is unknown.
    """
    if isinstance(kind, Discrepancy):
        return kind
    try:
        return DISCREPANCIES[DiscrepancyKind(kind)]()
    except ValueError:
        choices = ", ".join(k.value for k in DiscrepancyKind)
        raise ConfigError(f"Unknown discrepancy {kind!r}; choose one of {choices}")


# Expected (rho'(0), rho''(0), rho'''(0)) for each discrepancy.
RHO_TABLE: Dict[DiscrepancyKind, Tuple[float, float, float]] = {
    DiscrepancyKind.QUADRATIC: (1.0, -1.0, 0.0),
    DiscrepancyKind.EXP_TILTING: (1.0, -1.0, 1.0),
    DiscrepancyKind.EMP_LIKELIHOOD: (1.0, -1.0, 2.0),
}


def rho_table_check(
    disc: Union[str, Discrepancy], step: float = 1e-4
) -> Tuple[float, float, float]:
    """
    rho'(0), rho''(0) and rho'''(0) by central differences.

    Each derivative is the central difference of the next lower analytic one,
    which keeps the truncation error at O(step^2).
    """
    disc = get_discrepancy(disc)
    points = np.array([step, -step])

    def central(f) -> float:
        upper, lower = f(points)
        return float((upper - lower) / (2 * step))

    return central(disc.rho), central(disc.rho_prime), central(disc.rho_second)
