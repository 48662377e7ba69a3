import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Type

from errors import CalibrationError, ConfigError

from .commands import estimate, make_twin, rho_check, simulate
from .run_config import (
    EstimateConfig,
    MakeTwinConfig,
    RhoCheckConfig,
    RunConfig,
    SimulateConfig,
    resolve_config,
)


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_BAD_INPUT = 2


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    config_cls: Type[RunConfig]
    add_arguments: Callable[[argparse.ArgumentParser], None]
    handler: Callable[..., int]
    learner_flags: bool = False


COMMANDS: Dict[str, Command] = {}


def register(command: Command) -> None:
    COMMANDS[command.name] = command


def _add_learner_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--learner", help="ols, ridge, knn, tree or bagged-trees")
    parser.add_argument("--ridge-penalty", dest="ridge_penalty", type=float)
    parser.add_argument("--n-neighbors", dest="n_neighbors", type=int)
    parser.add_argument("--max-depth", dest="max_depth", type=int)
    parser.add_argument("--min-leaf-size", dest="min_leaf_size", type=int)
    parser.add_argument("--n-trees", dest="n_trees", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="calibrate",
        description="Calibration estimators of average treatment effects "
        "under covariate-adaptive randomization",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS.values():
        sub = subparsers.add_parser(
            command.name, help=command.help, argument_default=argparse.SUPPRESS
        )
        sub.add_argument("--config", help="File of key = value settings")
        sub.add_argument("--seed", type=int, help="Random seed")
        command.add_arguments(sub)
        if "out" in command.config_cls.model_fields:
            sub.add_argument("--out", help="Output CSV")
        if command.learner_flags:
            _add_learner_arguments(sub)
    return parser


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, resolve the run configuration and run the command."""
    args = vars(build_parser().parse_args(argv))
    command = COMMANDS[args.pop("command")]
    config_path = args.pop("config", None)
    workers = args.pop("workers", None)
    try:
        config = resolve_config(command.config_cls, args, config_path)
        if workers is not None:
            return command.handler(config, workers=workers)
        return command.handler(config)
    except ConfigError as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except CalibrationError as e:
        logger.error(f"{command.name} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT


register(
    Command(
        name="simulate",
        help="Run a Monte Carlo study",
        config_cls=SimulateConfig,
        add_arguments=simulate.add_arguments,
        handler=simulate.run,
        learner_flags=True,
    )
)
register(
    Command(
        name="estimate",
        help="Estimate the treatment effect in a CSV trial",
        config_cls=EstimateConfig,
        add_arguments=estimate.add_arguments,
        handler=estimate.run,
        learner_flags=True,
    )
)
register(
    Command(
        name="rho-check",
        help="Check rho derivatives at zero for every discrepancy",
        config_cls=RhoCheckConfig,
        add_arguments=rho_check.add_arguments,
        handler=rho_check.run,
    )
)
register(
    Command(
        name="make-twin",
        help="Write the synthetic savings trial and its external sample",
        config_cls=MakeTwinConfig,
        add_arguments=make_twin.add_arguments,
        handler=make_twin.run,
    )
)
