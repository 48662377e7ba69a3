from .estimators import (
    aipw_ate,
    calibrate_ate,
    cross_fit_ate,
    residuals,
    sdim,
    sdim_report,
)
from .report import AteReport


__all__ = [
    "AteReport",
    "aipw_ate",
    "calibrate_ate",
    "cross_fit_ate",
    "residuals",
    "sdim",
    "sdim_report",
]
