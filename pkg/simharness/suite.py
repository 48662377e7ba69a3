"""
Named estimators run on every simulated replication.

    sdim     stratified difference in means
    aipw     AIPW with within-stratum learner fits
    cal      quadratic calibration with the configured proxy
    cal_el   empirical-likelihood calibration with the configured proxy
    cal_cf   cross-fitted quadratic calibration with the configured proxy
"""

import enum
from dataclasses import dataclass, field, replace
from typing import List, Sequence

from design import derive_seed
from estimator import (
    AteReport,
    aipw_ate,
    calibrate_ate,
    cross_fit_ate,
    sdim_report,
)
from errors import ConfigError
from learners import LearnerSpec
from proxy import (
    ProxyContext,
    Trial,
    make_proxy_builder,
    parse_proxy_expression,
    within_stratum_proxy,
)


@enum.unique
class EstimatorKind(str, enum.Enum):
    SDIM = "sdim"
    AIPW = "aipw"
    CAL = "cal"
    CAL_EL = "cal_el"
    CAL_CF = "cal_cf"


@dataclass(frozen=True)
class EstimatorConfig:
    """
    One estimator of a study.

    proxy is a proxy expression; learner configures aipw fits and every
    learner term of the proxy. Learner seeds are re-derived per replication.
    """

    kind: EstimatorKind
    proxy: str = "within:ols"
    learner: LearnerSpec = field(default_factory=LearnerSpec)
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "kind", EstimatorKind(self.kind))
        if self.kind not in (EstimatorKind.SDIM, EstimatorKind.AIPW):
            parse_proxy_expression(self.proxy)

    @property
    def name(self) -> str:
        return self.label or self.kind.value

    def run(self, trial: Trial, seed: int, level: float = 0.95) -> AteReport:
        learner = replace(self.learner, seed=derive_seed(seed, 0))
        if self.kind is EstimatorKind.SDIM:
            return sdim_report(trial, level)
        if self.kind is EstimatorKind.AIPW:
            fits = within_stratum_proxy(trial, learner).values
            return aipw_ate(trial, fits[:, 0], fits[:, 1], level)

        context = ProxyContext(learner=learner)
        builder = make_proxy_builder(parse_proxy_expression(self.proxy), context)
        if self.kind is EstimatorKind.CAL_CF:
            return cross_fit_ate(
                trial, builder, "quadratic", seed=derive_seed(seed, 1), level=level
            )
        disc = "emp-likelihood" if self.kind is EstimatorKind.CAL_EL else "quadratic"
        return calibrate_ate(trial, builder(trial, trial), disc, level=level)


def build_suite(
    names: Sequence[str], proxy: str, learner: LearnerSpec
) -> List[EstimatorConfig]:
    """
    Estimator configs from comma-separated names sharing one proxy and learner.

    Raises:
        ConfigError: On unknown or duplicate names.
    """
    names = [name.strip() for name in names if name.strip()]
    if not names:
        raise ConfigError("No estimators requested")
    if len(set(names)) != len(names):
        raise ConfigError(f"Duplicate estimators in {names}")
    configs = []
    for name in names:
        try:
            kind = EstimatorKind(name)
        except ValueError:
            choices = ", ".join(k.value for k in EstimatorKind)
            raise ConfigError(f"Unknown estimator {name!r}; choose from {choices}")
        configs.append(EstimatorConfig(kind=kind, proxy=proxy, learner=learner))
    return configs
