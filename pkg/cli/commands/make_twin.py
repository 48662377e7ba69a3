import argparse
import logging

from simharness import make_savings_twin, write_savings_twin

from ..run_config import MakeTwinConfig, write_run_files


logger = logging.getLogger(__name__)


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--external-out", dest="external_out", help="External CSV to write"
    )


def run(config: MakeTwinConfig) -> int:
    twin = make_savings_twin(config.seed)
    write_savings_twin(twin, config.out, config.external_out)
    report = (
        f"trial: {len(twin.trial)} rows, "
        f"{twin.trial['stratum'].nunique()} strata -> {config.out}\n"
        f"external: {len(twin.external)} rows -> {config.external_out}"
    )
    write_run_files(config.out, config, report)
    logger.info(report.replace("\n", "; "))
    print(report)
    return 0
