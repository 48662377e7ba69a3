"""
CSV ingestion for trials.

Files are UTF-8, comma-delimited, with a header row. The arm column holds 0/1,
the stratum column arbitrary tokens, every other selected column a real.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Tuple

import numpy as np
import pandas as pd

from errors import DataParseError
from proxy import Trial


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CsvSchema:
    outcome_col: str = "y"
    arm_col: str = "a"
    stratum_col: str = "stratum"
    covariate_cols: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "covariate_cols", tuple(self.covariate_cols))
        if len(set(self.columns)) != len(self.columns):
            raise DataParseError(f"Schema columns must be distinct: {self.columns}")
        if not self.covariate_cols:
            raise DataParseError("Schema needs at least one covariate column")

    @property
    def columns(self) -> Tuple[str, ...]:
        return (self.outcome_col, self.arm_col, self.stratum_col, *self.covariate_cols)


def _parse_reals(frame: pd.DataFrame, column: str) -> np.ndarray:
    values = np.empty(len(frame))
    for row, cell in enumerate(frame[column]):
        try:
            values[row] = float(cell)
        except ValueError:
            raise DataParseError(
                f"Row {row + 1}, column {column!r}: cannot parse {cell!r} as a number",
                row=row + 1,
                column=column,
            )
        if not np.isfinite(values[row]):
            raise DataParseError(
                f"Row {row + 1}, column {column!r}: {cell!r} is not finite",
                row=row + 1,
                column=column,
            )
    return values


def _parse_arms(frame: pd.DataFrame, column: str) -> np.ndarray:
    arms = np.empty(len(frame), dtype=np.int8)
    for row, cell in enumerate(frame[column]):
        token = str(cell).strip()
        if token not in ("0", "1"):
            raise DataParseError(
                f"Row {row + 1}, column {column!r}: arm must be 0 or 1, got {cell!r}",
                row=row + 1,
                column=column,
            )
        arms[row] = int(token)
    return arms


def read_header(path) -> Tuple[str, ...]:
    """Column names of a CSV file."""
    path = Path(path)
    if not path.is_file():
        raise DataParseError(f"No such file: {path}")
    try:
        return tuple(pd.read_csv(path, nrows=0, skipinitialspace=True).columns)
    except pd.errors.EmptyDataError:
        raise DataParseError(f"{path} is empty")


def read_frame(path, columns: Tuple[str, ...]) -> pd.DataFrame:
    """
    Read the named columns as strings.

    Raises:
        DataParseError: If the file is missing, empty, or lacks a column, or
            a cell is blank.
    """
    path = Path(path)
    if not path.is_file():
        raise DataParseError(f"No such file: {path}")
    try:
        frame = pd.read_csv(
            path, dtype=str, keep_default_na=False, skipinitialspace=True
        )
    except pd.errors.EmptyDataError:
        raise DataParseError(f"{path} is empty")
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise DataParseError(f"{path} has no column(s) {missing}", column=missing[0])
    if frame.empty:
        raise DataParseError(f"{path} has a header but no rows")
    frame = frame[list(columns)]
    blank = frame.apply(lambda col: col.str.strip() == "")
    if blank.any().any():
        row, col = np.argwhere(blank.to_numpy())[0]
        raise DataParseError(
            f"Row {row + 1}, column {columns[col]!r} is empty",
            row=int(row) + 1,
            column=columns[col],
        )
    return frame


def load_trial(path, schema: CsvSchema) -> Trial:
    """
    Load a trial; strata are canonicalized to 1..K by first appearance.

    Row numbers in errors count data rows from 1, not counting the header.

    Raises:
        DataParseError: On a missing column, an unparseable cell or an empty
            file.
    """
    frame = read_frame(path, schema.columns)
    y = _parse_reals(frame, schema.outcome_col)
    a = _parse_arms(frame, schema.arm_col)
    x = np.column_stack([_parse_reals(frame, c) for c in schema.covariate_cols])
    labels = frame[schema.stratum_col].str.strip().to_numpy()
    trial = Trial.from_labels(y, a, labels, x, schema.covariate_cols)
    logger.info(
        f"Loaded {trial.n} units in {trial.num_strata} strata from {Path(path).name}"
    )
    return trial


def load_external(path, outcome_col: str, covariate_cols: Tuple[str, ...]):
    """
    External (x, y) data for the external proxy.

    Returns:
        (x, y) arrays.
    """
    frame = read_frame(path, (outcome_col, *covariate_cols))
    y = _parse_reals(frame, outcome_col)
    x = np.column_stack([_parse_reals(frame, c) for c in covariate_cols])
    return x, y


def write_trial(trial: Trial, path, schema: CsvSchema) -> None:
    """Write a trial with the original stratum tokens at full float precision."""
    if len(schema.covariate_cols) != trial.p:
        raise DataParseError(
            f"Schema names {len(schema.covariate_cols)} covariates, trial has {trial.p}"
        )
    frame = pd.DataFrame(
        {
            schema.outcome_col: [repr(float(v)) for v in trial.y],
            schema.arm_col: trial.a.astype(int),
            schema.stratum_col: [trial.stratum_names[k - 1] for k in trial.stratum],
        }
    )
    for j, column in enumerate(schema.covariate_cols):
        frame[column] = [repr(float(v)) for v in trial.x[:, j]]
    frame.to_csv(path, index=False)
