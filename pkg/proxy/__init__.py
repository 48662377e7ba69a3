from .builders import (
    cross_stratum_proxy,
    estimate_power_exponent,
    external_proxy,
    raw_covariate_proxy,
    within_stratum_proxy,
)
from .cross_fit import cross_fit_split
from .expression import (
    ExternalData,
    ProxyBuilder,
    ProxyContext,
    ProxyTerm,
    build_proxy,
    make_proxy_builder,
    parse_proxy_expression,
)
from .proxy_matrix import ProxyMatrix, stack_proxies
from .trial import StratumSummary, Trial, canonical_strata, stratum_arm_means


__all__ = [
    "ExternalData",
    "ProxyBuilder",
    "ProxyContext",
    "ProxyMatrix",
    "ProxyTerm",
    "StratumSummary",
    "Trial",
    "build_proxy",
    "canonical_strata",
    "cross_fit_split",
    "cross_stratum_proxy",
    "estimate_power_exponent",
    "external_proxy",
    "make_proxy_builder",
    "parse_proxy_expression",
    "raw_covariate_proxy",
    "stack_proxies",
    "stratum_arm_means",
    "within_stratum_proxy",
]
