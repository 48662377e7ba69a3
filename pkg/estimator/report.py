from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from inference import VarianceComponents


@dataclass(frozen=True)
class AteReport:
    """Point estimate, standard error, interval and variance components."""

    method: str
    tau_hat: float
    se: float
    ci_low: float
    ci_high: float
    var_h: float
    var_y: float
    var_explained: float
    n: int
    num_strata: int
    d: int
    level: float = 0.95
    proxy_labels: Tuple[str, ...] = field(default_factory=tuple)
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        method: str,
        tau_hat: float,
        interval: Tuple[float, float, float],
        vc: VarianceComponents,
        n: int,
        num_strata: int,
        d: int,
        level: float,
        **extra,
    ) -> "AteReport":
        low, high, se = interval
        return cls(
            method=method,
            tau_hat=float(tau_hat),
            se=se,
            ci_low=float(low),
            ci_high=float(high),
            var_h=vc.var_h,
            var_y=vc.var_y,
            var_explained=vc.var_explained,
            n=n,
            num_strata=num_strata,
            d=d,
            level=level,
            **extra,
        )

    def covers(self, tau: float) -> bool:
        return self.ci_low <= tau <= self.ci_high

    def as_row(self) -> Dict[str, Any]:
        """Flat record for tables and CSV output."""
        return {
            "method": self.method,
            "estimate": self.tau_hat,
            "se": self.se,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "var_h": self.var_h,
            "var_y": self.var_y,
            "var_explained": self.var_explained,
            "n": self.n,
            "K": self.num_strata,
            "d": self.d,
        }
