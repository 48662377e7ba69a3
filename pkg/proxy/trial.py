from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from errors import DegenerateStratumError, InvalidInputError


def canonical_strata(labels) -> Tuple[np.ndarray, Tuple[str, ...]]:
    """
    Map arbitrary stratum tokens to 1..K in order of first appearance.

    Returns:
        (codes, names) where names[k - 1] is the token behind code k.
    """
    codes, uniques = pd.factorize(np.asarray(labels), sort=False)
    if (codes < 0).any():
        raise InvalidInputError("Stratum labels contain missing values")
    return codes.astype(np.int64) + 1, tuple(str(u) for u in uniques)


@dataclass(frozen=True)
class StratumSummary:
    """Per-stratum counts, shares and arm means (index k - 1 for stratum k)."""

    n: int
    n_k: np.ndarray
    n1_k: np.ndarray
    n0_k: np.ndarray
    p_k: np.ndarray
    pi_k: np.ndarray
    ybar1_k: np.ndarray
    ybar0_k: np.ndarray

    @property
    def num_strata(self) -> int:
        return self.n_k.shape[0]


@dataclass(frozen=True)
class Trial:
    """
    Unit-level data of one experiment.

    Strata are stored as codes 1..K, every code non-empty. stratum_names keeps
    the original tokens and covariate_names the covariate column names.
    """

    y: np.ndarray
    a: np.ndarray
    stratum: np.ndarray
    x: np.ndarray
    covariate_names: Tuple[str, ...] = field(default_factory=tuple)
    stratum_names: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float).reshape(-1)
        a = np.asarray(self.a)
        stratum = np.asarray(self.stratum, dtype=np.int64).reshape(-1)
        x = np.asarray(self.x, dtype=float)
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        n = y.shape[0]
        if n == 0:
            raise InvalidInputError("A trial needs at least one unit")
        if a.shape != (n,) or stratum.shape != (n,) or x.shape[0] != n:
            raise InvalidInputError("y, a, stratum and x must have n aligned rows")
        if not np.isin(a, (0, 1)).all():
            raise InvalidInputError("Arm indicators must be 0 or 1")
        if not (np.all(np.isfinite(y)) and np.all(np.isfinite(x))):
            raise InvalidInputError("Outcomes and covariates must be finite")
        if stratum.min() < 1:
            raise InvalidInputError("Strata must be coded 1..K with every code present")
        num_strata = int(stratum.max())
        present = np.bincount(stratum, minlength=num_strata + 1)[1:]
        if (present == 0).any():
            raise InvalidInputError("Strata must be coded 1..K with every code present")

        names = tuple(self.covariate_names) or tuple(
            f"x{j + 1}" for j in range(x.shape[1])
        )
        if len(names) != x.shape[1]:
            raise InvalidInputError("covariate_names must match the covariate count")
        stratum_names = tuple(self.stratum_names) or tuple(
            str(k) for k in range(1, num_strata + 1)
        )
        if len(stratum_names) != num_strata:
            raise InvalidInputError("stratum_names must have one entry per stratum")

        object.__setattr__(self, "y", y)
        object.__setattr__(self, "a", a.astype(np.int8))
        object.__setattr__(self, "stratum", stratum)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "covariate_names", names)
        object.__setattr__(self, "stratum_names", stratum_names)

    @classmethod
    def from_labels(cls, y, a, labels, x, covariate_names=()) -> "Trial":
        """Build a trial from arbitrary stratum tokens."""
        codes, names = canonical_strata(labels)
        return cls(y, a, codes, x, tuple(covariate_names), names)

    @property
    def n(self) -> int:
        return self.y.shape[0]

    @property
    def num_strata(self) -> int:
        return len(self.stratum_names)

    @property
    def p(self) -> int:
        return self.x.shape[1]

    def column_index(self, name_or_index) -> int:
        """Resolve a covariate by name or 0-based index."""
        if isinstance(name_or_index, (int, np.integer)):
            index = int(name_or_index)
        elif str(name_or_index).isdigit():
            index = int(name_or_index)
        elif name_or_index in self.covariate_names:
            index = self.covariate_names.index(name_or_index)
        else:
            raise InvalidInputError(f"Unknown covariate {name_or_index!r}")
        if not 0 <= index < self.p:
            raise InvalidInputError(f"Covariate index {index} out of range")
        return index

    def cell(self, k: int, arm: int) -> np.ndarray:
        """Indices of units in stratum k (1-based) and the given arm."""
        return np.flatnonzero((self.stratum == k) & (self.a == arm))

    def subset(self, index) -> "Trial":
        """
        Restrict to the given units, keeping stratum codes unchanged.

        Raises:
            DegenerateStratumError: If some stratum loses all of its units.
        """
        index = np.asarray(index)
        stratum = self.stratum[index]
        present = np.bincount(stratum, minlength=self.num_strata + 1)[1:]
        if (present == 0).any():
            missing = int(np.flatnonzero(present == 0)[0]) + 1
            raise DegenerateStratumError(
                f"Stratum {missing} has no units in the subset", stratum=missing
            )
        return Trial(
            self.y[index],
            self.a[index],
            stratum,
            self.x[index],
            self.covariate_names,
            self.stratum_names,
        )

    def with_outcome(self, y) -> "Trial":
        return Trial(
            y, self.a, self.stratum, self.x, self.covariate_names, self.stratum_names
        )

    def stratum_summary(self, require_both_arms: bool = True) -> StratumSummary:
        """
        Counts, shares and arm means per stratum.

        Raises:
            DegenerateStratumError: If require_both_arms and a stratum has a
                single arm.
        """
        num_strata = self.num_strata
        index = self.stratum - 1
        n_k = np.bincount(index, minlength=num_strata).astype(float)
        n1_k = np.bincount(index, weights=self.a, minlength=num_strata)
        n0_k = n_k - n1_k
        if require_both_arms and ((n1_k == 0) | (n0_k == 0)).any():
            bad = int(np.flatnonzero((n1_k == 0) | (n0_k == 0))[0]) + 1
            raise DegenerateStratumError(
                f"Stratum {bad} does not contain both arms", stratum=bad
            )
        sum1 = np.bincount(index, weights=self.y * self.a, minlength=num_strata)
        sum0 = np.bincount(index, weights=self.y * (1 - self.a), minlength=num_strata)
        with np.errstate(invalid="ignore", divide="ignore"):
            ybar1 = sum1 / n1_k
            ybar0 = sum0 / n0_k
        return StratumSummary(
            n=self.n,
            n_k=n_k,
            n1_k=n1_k,
            n0_k=n0_k,
            p_k=n_k / self.n,
            pi_k=n1_k / n_k,
            ybar1_k=ybar1,
            ybar0_k=ybar0,
        )


def stratum_arm_means(trial: Trial, summary: Optional[StratumSummary] = None):
    """Per-unit fitted stratum-arm means (Ybar_1[k], Ybar_0[k]) broadcast to units."""
    summary = summary or trial.stratum_summary()
    index = trial.stratum - 1
    return summary.ybar1_k[index], summary.ybar0_k[index]
