import argparse
import logging
from typing import List

import pandas as pd

from dataio import (
    CsvSchema,
    load_external,
    load_trial,
    prune_strata,
    read_header,
    winsorize,
)
from errors import ConfigError
from estimator import AteReport, calibrate_ate, cross_fit_ate, sdim_report
from proxy import (
    ExternalData,
    ProxyContext,
    make_proxy_builder,
    parse_proxy_expression,
)

from ..run_config import EstimateConfig, write_run_files


logger = logging.getLogger(__name__)

REPORT_COLUMNS = (
    "method",
    "estimate",
    "se",
    "ci_low",
    "ci_high",
    "var_h",
    "var_y",
    "var_explained",
    "n",
    "K",
    "d",
)


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", help="Trial CSV")
    parser.add_argument("--outcome", help="Outcome column")
    parser.add_argument("--arm", help="Arm column (0/1)")
    parser.add_argument("--stratum", help="Stratum column")
    parser.add_argument(
        "--covariates", help="Comma list of covariate columns (default: all others)"
    )
    parser.add_argument("--proxy", help="Proxy expression")
    parser.add_argument(
        "--discrepancy", help="quadratic, exp-tilting or emp-likelihood"
    )
    parser.add_argument("--level", type=float, help="Confidence level")
    parser.add_argument(
        "--winsorize", type=float, help="Cap outcomes at this upper quantile"
    )
    parser.add_argument("--prune", type=int, help="Drop strata smaller than this")
    parser.add_argument(
        "--prune-by", dest="prune_by", help="Apply --prune to strata or arms"
    )
    parser.add_argument("--external", help="External CSV for external proxies")
    parser.add_argument(
        "--external-outcome", dest="external_outcome", help="External outcome column"
    )
    parser.add_argument(
        "--external-learner", dest="external_learner", help="Learner for external fits"
    )
    parser.add_argument(
        "--cross-fit",
        dest="cross_fit",
        action="store_const",
        const=True,
        help="Also report the cross-fitted estimator",
    )


def _schema(config: EstimateConfig) -> CsvSchema:
    covariates = tuple(c.strip() for c in config.covariates.split(",") if c.strip())
    if not covariates:
        taken = {config.outcome, config.arm, config.stratum}
        covariates = tuple(c for c in read_header(config.data) if c not in taken)
        if not covariates:
            raise ConfigError(f"{config.data} has no covariate columns")
    return CsvSchema(config.outcome, config.arm, config.stratum, covariates)


def format_reports(reports: List[AteReport]) -> str:
    header = f"{'Method':<24}{'Estimate':>12}{'SE':>10}{'CI low':>12}{'CI high':>12}"
    lines = [header, "-" * len(header)]
    for report in reports:
        lines.append(
            f"{report.method:<24}{report.tau_hat:>12.4f}{report.se:>10.4f}"
            f"{report.ci_low:>12.4f}{report.ci_high:>12.4f}"
        )
    lines.append("")
    for report in reports:
        lines.append(
            f"{report.method}: var_h = {report.var_h:.6g}, var_y = {report.var_y:.6g}, "
            f"var_explained = {report.var_explained:.6g}"
        )
        if report.proxy_labels:
            lines.append(f"  proxy columns: {', '.join(report.proxy_labels)}")
        for key in sorted(report.diagnostics):
            lines.append(f"  {key}: {report.diagnostics[key]}")
    return "\n".join(lines)


def run(config: EstimateConfig) -> int:
    schema = _schema(config)
    trial = load_trial(config.data, schema)
    notes = [f"loaded {trial.n} units in {trial.num_strata} strata"]

    if config.winsorize is not None:
        y, cap = winsorize(trial.y, config.winsorize, return_cap=True)
        notes.append(f"outcome winsorized at the {config.winsorize} quantile ({cap:.6g})")
        trial = trial.with_outcome(y)
    if config.prune > 1:
        pruned = prune_strata(trial, config.prune, by=config.prune_by.value)
        trial = pruned.trial
        notes.append(
            f"pruned {len(pruned.removed_strata)} strata and {pruned.removed_units} "
            f"units (by {config.prune_by.value} < {config.prune}); "
            f"{trial.n} units in {trial.num_strata} strata remain"
        )

    external = None
    if config.external:
        ext_x, ext_y = load_external(
            config.external, config.external_outcome, schema.covariate_cols
        )
        external = ExternalData(ext_x, ext_y, schema.covariate_cols)
        notes.append(f"external data: {ext_y.size} rows from {config.external}")

    context = ProxyContext(
        learner=config.learner_spec(),
        external_learner=config.learner_spec(config.external_learner),
        external=external,
    )
    builder = make_proxy_builder(parse_proxy_expression(config.proxy), context)

    reports = [sdim_report(trial, config.level)]
    calibrated = calibrate_ate(
        trial, builder(trial, trial), config.discrepancy.value, level=config.level
    )
    reports.append(calibrated)
    if config.cross_fit:
        reports.append(
            cross_fit_ate(
                trial,
                builder,
                config.discrepancy.value,
                seed=config.seed,
                level=config.level,
            )
        )
    uses_external = any(label.startswith("external") for label in calibrated.proxy_labels)
    notes.append(f"external proxy: {'yes' if uses_external else 'no'}")

    frame = pd.DataFrame([r.as_row() for r in reports], columns=list(REPORT_COLUMNS))
    frame.to_csv(config.out, index=False, float_format="%.10g")
    report = "\n".join(notes) + "\n\n" + format_reports(reports)
    write_run_files(config.out, config, report)
    print(config.serialize() + "\n" + report)
    return 0
