"""
A small language for composing proxies.

    raw:x1,x2                 raw covariates
    pow:x1^0.481+1            (x1 + 1) ** 0.481, also pow:(x1+1)^0.481
    pow:x1^auto+1             exponent from estimate_power_exponent on train
    within:ols                within-stratum fits (alias ols-within)
    cross:tree                cross-stratum fits (alias tree-cross)
    external[:bagged-trees]   pooled fit on the external dataset

Terms are joined with "+" (or "," right before another term) and stacked in
order.
"""

import re
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from errors import ConfigError, InvalidInputError
from learners import LearnerKind, LearnerSpec

from .builders import (
    cross_stratum_proxy,
    estimate_power_exponent,
    external_proxy,
    raw_covariate_proxy,
    within_stratum_proxy,
)
from .proxy_matrix import ProxyMatrix, stack_proxies
from .trial import Trial


ProxyBuilder = Callable[[Trial, Trial], ProxyMatrix]

_PREFIXES = r"(?:raw:|pow:|within:|cross:|external\b|[a-z-]+-(?:within|cross)\b)"
_TERM_SPLIT = re.compile(rf"\s*[+,]\s*(?={_PREFIXES})")
_NUMBER = r"[-+]?\d*\.?\d+(?:[eE][-+]?\d+)?"
_POW_PLAIN = re.compile(
    rf"^pow:(?P<col>[\w.]+)\s*\^\s*(?P<exp>{_NUMBER}|auto)"
    rf"\s*(?:(?P<sign>[+-])\s*(?P<shift>{_NUMBER}))?$"
)
_POW_PAREN = re.compile(
    rf"^pow:\(\s*(?P<col>[\w.]+)\s*(?:(?P<sign>[+-])\s*(?P<shift>{_NUMBER}))?\s*\)"
    rf"\s*\^\s*(?P<exp>{_NUMBER}|auto)$"
)


@dataclass(frozen=True)
class ExternalData:
    """External covariates and outcomes, aligned to named trial covariates."""

    x: np.ndarray
    y: np.ndarray
    columns: Tuple[str, ...]


@dataclass(frozen=True)
class ProxyContext:
    """Everything a term needs besides the trials."""

    learner: LearnerSpec = field(default_factory=LearnerSpec)
    external_learner: LearnerSpec = field(
        default_factory=lambda: LearnerSpec(kind=LearnerKind.BAGGED_TREES)
    )
    external: Optional[ExternalData] = None


@dataclass(frozen=True)
class ProxyTerm:
    """One parsed term of an expression."""

    kind: str
    columns: Tuple[str, ...] = ()
    exponent: Optional[float] = None
    shift: float = 0.0
    learner: Optional[LearnerKind] = None

    def build(self, train: Trial, target: Trial, context: ProxyContext) -> ProxyMatrix:
        if self.kind == "raw":
            return raw_covariate_proxy(target, columns=self.columns)
        if self.kind == "pow":
            column = self.columns[0]
            exponent = self.exponent
            if exponent is None:
                exponent = estimate_power_exponent(train, column)
            return raw_covariate_proxy(
                target, power_transforms=[(column, exponent, self.shift)]
            )
        if self.kind in ("within", "cross"):
            spec = replace(context.learner, kind=self.learner)
            build = within_stratum_proxy if self.kind == "within" else cross_stratum_proxy
            return build(train, spec, target=target)
        if self.kind == "external":
            if context.external is None:
                raise InvalidInputError("The proxy uses 'external' but no data was given")
            spec = context.external_learner
            if self.learner is not None:
                spec = replace(spec, kind=self.learner)
            return external_proxy(
                target,
                context.external.x,
                context.external.y,
                spec,
                columns=context.external.columns,
            )
        raise InvalidInputError(f"Unknown proxy term {self.kind!r}")

    @property
    def uses_learner(self) -> bool:
        return self.kind in ("within", "cross")


def _learner_kind(token: str) -> LearnerKind:
    try:
        return LearnerKind(token.strip())
    except ValueError:
        choices = ", ".join(kind.value for kind in LearnerKind)
        raise ConfigError(f"Unknown learner {token!r}; choose one of {choices}")


def _parse_term(text: str) -> ProxyTerm:
    text = text.strip()
    if text.startswith("raw:"):
        columns = tuple(c.strip() for c in text[4:].split(",") if c.strip())
        if not columns:
            raise ConfigError(f"Empty column list in {text!r}")
        return ProxyTerm(kind="raw", columns=columns)
    if text.startswith("pow:"):
        match = _POW_PLAIN.match(text) or _POW_PAREN.match(text)
        if not match:
            raise ConfigError(f"Cannot parse power transform {text!r}")
        shift = float(match["shift"]) if match["shift"] else 0.0
        if match["sign"] == "-":
            shift = -shift
        exponent = None if match["exp"] == "auto" else float(match["exp"])
        return ProxyTerm(
            kind="pow", columns=(match["col"],), exponent=exponent, shift=shift
        )
    for kind in ("within", "cross"):
        if text.startswith(f"{kind}:"):
            return ProxyTerm(kind=kind, learner=_learner_kind(text[len(kind) + 1 :]))
        if text.endswith(f"-{kind}"):
            return ProxyTerm(kind=kind, learner=_learner_kind(text[: -len(kind) - 1]))
    if text == "external":
        return ProxyTerm(kind="external")
    if text.startswith("external:"):
        return ProxyTerm(kind="external", learner=_learner_kind(text[9:]))
    raise ConfigError(f"Cannot parse proxy term {text!r}")


def parse_proxy_expression(expression: str) -> List[ProxyTerm]:
    """
    Split an expression into terms.

    Raises:
        ConfigError: On an empty expression or an unknown term.
    """
    parts = [p for p in _TERM_SPLIT.split(expression.strip()) if p.strip()]
    if not parts:
        raise ConfigError("Empty proxy expression")
    return [_parse_term(part) for part in parts]


def make_proxy_builder(
    terms: Sequence[ProxyTerm], context: ProxyContext
) -> ProxyBuilder:
    """Turn parsed terms into a (train, target) -> ProxyMatrix builder."""

    def build(train: Trial, target: Trial) -> ProxyMatrix:
        return stack_proxies([term.build(train, target, context) for term in terms])

    return build


def build_proxy(expression: str, trial: Trial, context: ProxyContext) -> ProxyMatrix:
    """Parse and evaluate an expression with train = target = trial."""
    builder = make_proxy_builder(parse_proxy_expression(expression), context)
    return builder(trial, trial)
