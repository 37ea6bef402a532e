"""Tests for study tables and summaries."""

import pandas as pd
import pytest

from hyptree.exceptions import ParseError
from hyptree.models import CurvatureRecord, Method, StudyKind, StudyRecord
from hyptree.study.metrics import (
    SUMMARY_COLUMNS,
    read_records,
    records_to_frame,
    summarize,
    write_records,
)


def _record(method, replicate, rf=None, inferred=None, generating=-100.0, error=None):
    return StudyRecord(
        kind=StudyKind.TAXA,
        grid_value=5,
        tree_id=0,
        replicate=replicate,
        method=method,
        rf_distance=rf,
        loglik_inferred=inferred,
        loglik_generating=generating if inferred is not None else None,
        wall_time_s=0.5,
        error=error,
    )


@pytest.fixture
def records():
    return [
        _record(Method.NJ, 0, rf=0, inferred=-100.0),
        _record(Method.NJ, 1, rf=2, inferred=-101.0),
        _record(Method.HYPERBOLIC, 0, rf=0, inferred=-99.5),
        _record(Method.HYPERBOLIC, 1, error="Gradient is undefined"),
    ]


def test_identities_filled_in(records):
    assert records[0].topology_match and records[0].loglik_success
    assert not records[1].topology_match and not records[1].loglik_success


def test_inconsistent_identity_rejected():
    with pytest.raises(ValueError):
        StudyRecord(
            kind=StudyKind.TAXA,
            grid_value=5,
            tree_id=0,
            replicate=0,
            method=Method.NJ,
            rf_distance=2,
            topology_match=True,
        )


def test_summary_rates(records):
    summary = summarize(records).set_index("method")
    assert list(summarize(records).columns) == SUMMARY_COLUMNS
    assert summary.loc["nj", "topology_rate"] == 0.5
    assert summary.loc["nj", "loglik_rate"] == 0.5
    assert summary.loc["nj", "mean_rf"] == 1.0
    assert summary.loc["hyperbolic", "failures"] == 1
    assert summary.loc["hyperbolic", "topology_rate"] == 0.5
    assert summary.loc["hyperbolic", "runs"] == 2


@pytest.mark.filterwarnings("error::FutureWarning")
def test_summary_of_failed_rows_emits_no_warnings(records):
    summary = summarize(records[2:]).set_index("method")
    assert summary.loc["hyperbolic", "topology_rate"] == 0.5
    assert summary.loc["hyperbolic", "loglik_rate"] == 0.5


def test_empty_summary():
    assert summarize([]).empty
    assert list(summarize([]).columns) == SUMMARY_COLUMNS


def test_csv_round_trip(tmp_path, records):
    path = tmp_path / "study.csv"
    write_records(records, StudyRecord, path)
    assert read_records(path, StudyRecord) == records


def test_empty_table_keeps_header(tmp_path):
    path = tmp_path / "study.csv"
    write_records([], StudyRecord, path)
    frame = pd.read_csv(path)
    assert frame.empty
    assert list(frame.columns) == list(StudyRecord.model_fields)


def test_curvature_records(tmp_path):
    rows = [
        CurvatureRecord(
            rho=0.5, dim=2, taxon="T01", tree_distance=0.0, fitted_distance=0.0, converged=True
        )
    ]
    path = tmp_path / "curvature.csv"
    write_records(rows, CurvatureRecord, path)
    assert records_to_frame(rows, CurvatureRecord).shape == (1, 6)
    assert read_records(path, CurvatureRecord) == rows


def test_invalid_row(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("rho,dim,taxon,tree_distance,fitted_distance,converged\n-1,2,A,0,0,True\n")
    with pytest.raises(ParseError):
        read_records(path, CurvatureRecord)
