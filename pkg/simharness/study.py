import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import settings
from design import derive_seed
from errors import CalibrationError, InvalidInputError

from .generator import STREAM_ESTIMATORS, ModelSpec, generate, true_tau
from .suite import EstimatorConfig


logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ("estimator", "bias", "sd", "se", "cp", "reps", "failures", "sd_mc_se")

# (tau_hat, se, covers) or None when the replication failed
Outcome = Optional[Tuple[float, float, bool]]


@dataclass(frozen=True)
class SummaryRow:
    estimator: str
    bias: float
    sd: float
    se: float
    cp: float
    reps: int
    failures: int

    @property
    def sd_mc_se(self) -> float:
        """Monte Carlo standard error of sd."""
        if self.reps < 2:
            return float("nan")
        return self.sd / np.sqrt(2 * (self.reps - 1))


@dataclass(frozen=True)
class SimSummary:
    spec: ModelSpec
    true_tau: float
    rows: Tuple[SummaryRow, ...]

    def row(self, estimator: str) -> SummaryRow:
        for row in self.rows:
            if row.estimator == estimator:
                return row
        raise KeyError(estimator)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [{c: getattr(row, c) for c in SUMMARY_COLUMNS} for row in self.rows],
            columns=list(SUMMARY_COLUMNS),
        )

    def to_csv(self, path) -> None:
        self.to_frame().to_csv(path, index=False, float_format="%.10g")

    def format_table(self) -> str:
        """Aligned text table, one line per estimator."""
        header = f"{'Estimator':<12}{'Bias':>10}{'SD':>10}{'SE':>10}{'CP':>8}{'Fail':>6}"
        lines = [header, "-" * len(header)]
        for row in self.rows:
            lines.append(
                f"{row.estimator:<12}{row.bias:>10.3f}{row.sd:>10.3f}"
                f"{row.se:>10.3f}{row.cp:>8.3f}{row.failures:>6d}"
            )
        return "\n".join(lines)


def summarize(
    name: str, outcomes: Sequence[Outcome], tau: float
) -> SummaryRow:
    """Absolute bias, empirical SD, mean SE and coverage over successful reps."""
    done = [o for o in outcomes if o is not None]
    failures = len(outcomes) - len(done)
    if not done:
        nan = float("nan")
        return SummaryRow(name, nan, nan, nan, nan, 0, failures)
    estimates = np.array([o[0] for o in done])
    return SummaryRow(
        estimator=name,
        bias=float(abs(estimates.mean() - tau)),
        sd=float(estimates.std(ddof=1)) if len(done) > 1 else float("nan"),
        se=float(np.mean([o[1] for o in done])),
        cp=float(np.mean([o[2] for o in done])),
        reps=len(done),
        failures=failures,
    )


def run_replication(
    spec: ModelSpec,
    rep: int,
    estimators: Sequence[EstimatorConfig],
    tau: float,
    level: float = 0.95,
) -> List[Outcome]:
    """Every estimator on replication rep; failures become None."""
    trial, _ = generate(spec, rep, with_tau=False)
    outcomes: List[Outcome] = []
    for index, config in enumerate(estimators):
        try:
            report = config.run(trial, seed=_estimator_seed(spec, rep, index), level=level)
        except CalibrationError as e:
            logger.warning(f"rep {rep}: {config.name} failed: {e}")
            outcomes.append(None)
            continue
        outcomes.append((report.tau_hat, report.se, report.covers(tau)))
    return outcomes


def _estimator_seed(spec: ModelSpec, rep: int, index: int) -> int:
    return derive_seed(spec.seed, STREAM_ESTIMATORS, rep, index)


def run_study(
    spec: ModelSpec,
    reps: int,
    estimators: Sequence[EstimatorConfig],
    workers: Optional[int] = None,
    level: float = 0.95,
) -> SimSummary:
    """
    Run reps replications and summarize each estimator.

    Replication r depends only on (spec, r), and results are folded in
    replication order, so the summary does not depend on workers.

    Raises:
        InvalidInputError: If reps < 2 or no estimators are given.
    """
    if reps < 2:
        raise InvalidInputError(f"A study needs at least 2 replications, got {reps}")
    if not estimators:
        raise InvalidInputError("A study needs at least one estimator")
    names = [config.name for config in estimators]
    if len(set(names)) != len(names):
        raise InvalidInputError(f"Estimator names must be unique, got {names}")
    workers = workers or settings.CALIBRATION_WORKERS
    tau = true_tau(spec.model_id)
    logger.info(
        f"Model {spec.model_id}, n={spec.n}, {spec.design.scheme.value}: "
        f"{reps} reps on {workers} worker(s)"
    )

    def task(rep: int) -> List[Outcome]:
        return run_replication(spec, rep, estimators, tau, level)

    if workers == 1:
        results = [task(rep) for rep in range(reps)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(task, range(reps)))

    per_estimator: Dict[str, List[Outcome]] = {name: [] for name in names}
    for outcomes in results:
        for name, outcome in zip(names, outcomes):
            per_estimator[name].append(outcome)
    rows = tuple(summarize(name, per_estimator[name], tau) for name in names)
    for row in rows:
        if row.failures:
            logger.warning(f"{row.estimator}: {row.failures} of {reps} reps failed")
    return SimSummary(spec=spec, true_tau=tau, rows=rows)
