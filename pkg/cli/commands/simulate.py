import argparse
import logging

from config import settings
from simharness import ModelSpec, build_suite, run_study

from ..run_config import SimulateConfig, write_run_files


logger = logging.getLogger(__name__)


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", type=int, help="Outcome model 1-4")
    parser.add_argument("--n", type=int, help="Units per replication")
    parser.add_argument("--p", type=int, help="Covariates per unit")
    parser.add_argument("--reps", type=int, help="Replications")
    parser.add_argument(
        "--design", help="simple, stratified-block or minimization"
    )
    parser.add_argument("--block", type=int, help="Block size (stratified-block)")
    parser.add_argument("--pi", type=float, help="Target treated share")
    parser.add_argument(
        "--biased-coin", dest="biased_coin", type=float, help="Minimization coin"
    )
    parser.add_argument("--proxy", help="Proxy expression, e.g. within:ols+raw:x1")
    parser.add_argument(
        "--estimators", help="Comma list of sdim, aipw, cal, cal_el, cal_cf"
    )
    parser.add_argument("--level", type=float, help="Confidence level")
    parser.add_argument(
        "--freeze-interactions",
        dest="freeze_interactions",
        action="store_const",
        const=True,
        help="Draw the interaction covariates once per study",
    )
    parser.add_argument(
        "--workers",
        type=int,
        help="Worker threads (default CALIBRATION_WORKERS); never changes results",
    )


def run(config: SimulateConfig, workers: int = None) -> int:
    spec = ModelSpec(
        model_id=config.model,
        n=config.n,
        p=config.p,
        design=config.design_spec(),
        seed=config.seed,
        freeze_interactions=config.freeze_interactions,
    )
    suite = build_suite(
        config.estimators.split(","), config.proxy, config.learner_spec()
    )
    summary = run_study(
        spec,
        config.reps,
        suite,
        workers=workers or settings.CALIBRATION_WORKERS,
        level=config.level,
    )
    summary.to_csv(config.out)

    report = (
        f"Model {config.model}, n = {config.n}, {config.design.value}, "
        f"{config.reps} replications, true tau = {summary.true_tau:.6f}\n\n"
        f"{summary.format_table()}"
    )
    write_run_files(config.out, config, report)
    print(config.serialize() + "\n" + report)
    failed = sum(row.failures for row in summary.rows)
    if failed:
        logger.warning(f"{failed} estimator run(s) failed; see the Fail column")
    return 0
