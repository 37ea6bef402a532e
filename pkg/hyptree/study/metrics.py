"""Tidy study tables and per-grid success rates."""

import logging
from pathlib import Path
from typing import List, Sequence, Type, TypeVar, Union

import pandas as pd
from pydantic import BaseModel

from hyptree.exceptions import ParseError
from hyptree.models import StudyRecord

logger = logging.getLogger(__name__)

Record = TypeVar("Record", bound=BaseModel)

SUMMARY_COLUMNS = [
    "kind",
    "grid_value",
    "method",
    "runs",
    "failures",
    "topology_rate",
    "loglik_rate",
    "mean_rf",
]


def records_to_frame(records: Sequence[BaseModel], model: Type[BaseModel]) -> pd.DataFrame:
    """One row per record with the model's fields as columns, even when empty."""
    rows = [r.model_dump(mode="json") for r in records]
    return pd.DataFrame(rows, columns=list(model.model_fields))


def write_records(
    records: Sequence[BaseModel], model: Type[BaseModel], path: Union[str, Path]
) -> None:
    records_to_frame(records, model).to_csv(path, index=False, float_format="%.17g")


def read_records(path: Union[str, Path], model: Type[Record]) -> List[Record]:
    """Read a table written by :func:`write_records` back into validated records.

    Raises:
        ParseError: If a row does not validate
    """
    frame = pd.read_csv(path, dtype=object, keep_default_na=False)
    records = []
    for k, row in enumerate(frame.to_dict(orient="records")):
        values = {key: (None if value == "" else value) for key, value in row.items()}
        try:
            records.append(model.model_validate(values))
        except ValueError as e:
            raise ParseError("Invalid study row", f"{path}: row {k + 1}: {e}")
    return records


def summarize(records: Sequence[StudyRecord]) -> pd.DataFrame:
    """Success rates per (kind, grid value, method).

    ``topology_rate`` is the fraction of runs recovering the generating
    topology and ``loglik_rate`` the fraction matching or exceeding its
    tuned likelihood; failed runs count against both.
    """
    frame = records_to_frame(records, StudyRecord)
    if frame.empty:
        return pd.DataFrame(columns=SUMMARY_COLUMNS)
    frame["failed"] = frame["error"].notna()
    frame["rf_distance"] = pd.to_numeric(frame["rf_distance"])
    frame["topology_match"] = frame["topology_match"].astype("boolean").fillna(False).astype(bool)
    frame["loglik_success"] = frame["loglik_success"].astype("boolean").fillna(False).astype(bool)
    summary = (
        frame.groupby(["kind", "grid_value", "method"], sort=True)
        .agg(
            runs=("replicate", "size"),
            failures=("failed", "sum"),
            topology_rate=("topology_match", "mean"),
            loglik_rate=("loglik_success", "mean"),
            mean_rf=("rf_distance", "mean"),
        )
        .reset_index()
    )
    return summary[SUMMARY_COLUMNS]
