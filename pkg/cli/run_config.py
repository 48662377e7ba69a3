"""
Typed run configurations for the command-line commands.

Values come from, in increasing priority: field defaults, a `key = value`
config file and explicit flags. Every resolved configuration serializes to
sorted `key = value` lines that can be fed back through --config.
"""

import enum
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from calibration import DiscrepancyKind
from dataio import PruneRule
from design import DesignSpec, RandomizationScheme
from errors import ConfigError
from learners import LearnerKind, LearnerSpec


logger = logging.getLogger(__name__)

Config = TypeVar("Config", bound="RunConfig")


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    seed: int = Field(0, ge=0, lt=1 << 64)

    def serialize(self) -> str:
        lines = []
        for name in sorted(type(self).model_fields):
            lines.append(f"{name} = {_format_value(getattr(self, name))}")
        return "\n".join(lines) + "\n"


class LearnerOptions(RunConfig):
    learner: LearnerKind = LearnerKind.OLS
    ridge_penalty: float = Field(1.0, ge=0)
    n_neighbors: int = Field(10, ge=1)
    max_depth: int = Field(6, ge=1)
    min_leaf_size: int = Field(5, ge=1)
    n_trees: int = Field(25, ge=1)

    def learner_spec(self, kind: Optional[LearnerKind] = None) -> LearnerSpec:
        return LearnerSpec(
            kind=kind or self.learner,
            ridge_penalty=self.ridge_penalty,
            n_neighbors=self.n_neighbors,
            max_depth=self.max_depth,
            min_leaf_size=self.min_leaf_size,
            n_trees=self.n_trees,
            seed=self.seed,
        )


class SimulateConfig(LearnerOptions):
    model: int = Field(1, ge=1, le=4)
    n: int = Field(1000, ge=50)
    p: int = Field(30, ge=4)
    reps: int = Field(300, ge=2)
    design: RandomizationScheme = RandomizationScheme.STRATIFIED_BLOCK
    block: int = Field(6, ge=2)
    pi: float = Field(0.5, gt=0, lt=1)
    biased_coin: float = Field(0.75, gt=0.5, le=1)
    proxy: str = "within:ols"
    estimators: str = "sdim,aipw,cal"
    level: float = Field(0.95, gt=0, lt=1)
    freeze_interactions: bool = False
    out: str = "simulation.csv"

    def design_spec(self) -> DesignSpec:
        return DesignSpec(
            scheme=self.design,
            target_share=self.pi,
            block_size=self.block,
            biased_coin=self.biased_coin,
            seed=self.seed,
        )


class EstimateConfig(LearnerOptions):
    data: str
    outcome: str = "y"
    arm: str = "a"
    stratum: str = "stratum"
    covariates: str = ""
    proxy: str = "within:ols"
    discrepancy: DiscrepancyKind = DiscrepancyKind.QUADRATIC
    level: float = Field(0.95, gt=0, lt=1)
    winsorize: Optional[float] = Field(None, gt=0, le=1)
    prune: int = Field(1, ge=1)
    prune_by: PruneRule = PruneRule.STRATUM
    external: Optional[str] = None
    external_outcome: str = "y"
    external_learner: LearnerKind = LearnerKind.BAGGED_TREES
    cross_fit: bool = False
    out: str = "estimate.csv"


class RhoCheckConfig(RunConfig):
    as_json: bool = False
    step: float = Field(1e-4, gt=0)
    tolerance: float = Field(1e-4, gt=0)


class MakeTwinConfig(RunConfig):
    out: str = "twin.csv"
    external_out: str = "twin_external.csv"


def _format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def read_config_file(path) -> Dict[str, str]:
    """
    Parse `key = value` lines; `#` starts a comment and empty values are dropped.

    Raises:
        ConfigError: If the file does not exist.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"No such config file: {path}")
    values = dotenv_values(path)
    return {key: value for key, value in values.items() if value not in (None, "")}


def resolve_config(
    config_cls: Type[Config], flags: Dict[str, Any], config_path=None
) -> Config:
    """
    Merge defaults < config file < flags and validate.

    Raises:
        ConfigError: On unknown keys or invalid values.
    """
    merged: Dict[str, Any] = {}
    if config_path:
        merged.update(read_config_file(config_path))
        logger.debug(f"Loaded {len(merged)} setting(s) from {config_path}")
    merged.update({k: v for k, v in flags.items() if v is not None})
    try:
        return config_cls(**merged)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise ConfigError(f"Invalid configuration: {problems}")


def companion_paths(out) -> Dict[str, Path]:
    """The .config and .txt files written next to an output CSV."""
    out = Path(out)
    return {"config": out.with_suffix(".config"), "text": out.with_suffix(".txt")}


def write_run_files(out, config: RunConfig, report: str) -> None:
    """Write <stem>.config and <stem>.txt (config block followed by the report)."""
    paths = companion_paths(out)
    serialized = config.serialize()
    paths["config"].write_text(serialized, encoding="utf-8")
    commented = "".join(f"# {line}\n" for line in serialized.splitlines())
    paths["text"].write_text(f"{commented}\n{report}\n", encoding="utf-8")
