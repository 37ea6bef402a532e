"""Simulation studies and their summaries."""

from hyptree.study.metrics import read_records, records_to_frame, summarize, write_records
from hyptree.study.runner import (
    CurvatureStudyConfig,
    StudyConfig,
    run_curvature_study,
    run_study,
)

__all__ = [
    "CurvatureStudyConfig",
    "StudyConfig",
    "read_records",
    "records_to_frame",
    "run_curvature_study",
    "run_study",
    "summarize",
    "write_records",
]
