from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from errors import InvalidInputError


@dataclass(frozen=True)
class ProxyMatrix:
    """
    Information-proxy values xi_n(X_i), one row per unit.

    labels describe the columns, builder records how the matrix was made and
    warnings collects anything a builder had to work around.
    """

    values: np.ndarray
    labels: Tuple[str, ...]
    builder: str
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.ndim != 2 or values.shape[1] < 1:
            raise InvalidInputError("A proxy needs at least one column")
        if not np.all(np.isfinite(values)):
            raise InvalidInputError(f"Proxy {self.builder!r} has non-finite values")
        if len(self.labels) != values.shape[1]:
            raise InvalidInputError("Proxy labels must match the column count")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "warnings", tuple(self.warnings))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


def stack_proxies(parts: Sequence[ProxyMatrix]) -> ProxyMatrix:
    """
    Column-wise concatenation preserving order, labels and warnings.

    Raises:
        InvalidInputError: If parts is empty or the row counts differ.
    """
    if not parts:
        raise InvalidInputError("Nothing to stack")
    if len(parts) == 1:
        return parts[0]
    n = parts[0].n
    if any(part.n != n for part in parts):
        raise InvalidInputError(
            f"Cannot stack proxies with row counts {[part.n for part in parts]}"
        )
    return ProxyMatrix(
        values=np.hstack([part.values for part in parts]),
        labels=tuple(label for part in parts for label in part.labels),
        builder=" + ".join(part.builder for part in parts),
        warnings=tuple(w for part in parts for w in part.warnings),
    )
