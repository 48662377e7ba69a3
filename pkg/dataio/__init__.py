from .csv_io import (
    CsvSchema,
    load_external,
    load_trial,
    read_frame,
    read_header,
    write_trial,
)
from .preparation import PruneResult, PruneRule, prune_strata, winsorize


__all__ = [
    "CsvSchema",
    "PruneResult",
    "PruneRule",
    "load_external",
    "load_trial",
    "prune_strata",
    "read_frame",
    "read_header",
    "winsorize",
    "write_trial",
]
