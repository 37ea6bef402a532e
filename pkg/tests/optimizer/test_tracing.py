"""Tests for trace sinks."""

import io
import json

import pytest

from hyptree.config import OptimizerSettings
from hyptree.exceptions import ParseError
from hyptree.models import TraceRecord
from hyptree.optimizer.ascent import optimize
from hyptree.optimizer.configuration import random_configuration
from hyptree.optimizer.tracing import JsonlTraceSink, TraceReference, read_trace
from hyptree.seqmodel.alignment import diff_rates
from hyptree.seqmodel.simulate import simulate_alignment


def test_jsonl_uses_short_names():
    stream = io.StringIO()
    sink = JsonlTraceSink(stream)
    sink.emit(TraceRecord(iteration=10, objective=-3.5, max_step_taken=0.01, rf_to_reference=2))
    row = json.loads(stream.getvalue())
    assert row == {
        "iteration": 10, "objective": -3.5, "max_step": 0.01, "rf": 2, "tree_loglik": None
    }


def test_file_sink_round_trip(tmp_path):
    records = [
        TraceRecord(iteration=0, objective=-10.0, max_step_taken=0.0),
        TraceRecord(iteration=10, objective=-9.0, max_step_taken=0.05, tree_loglik=-120.5),
    ]
    path = tmp_path / "trace.jsonl"
    with JsonlTraceSink(path) as sink:
        for record in records:
            sink.emit(record)
    assert read_trace(path) == records


def test_invalid_trace_line(tmp_path):
    path = tmp_path / "trace.jsonl"
    path.write_text('{"iteration": 0, "objective": "x", "max_step": 0}\n')
    with pytest.raises(ParseError):
        read_trace(path)


def test_records_score_reference(make_tree):
    """With a reference the trace carries RF distance and tuned likelihood."""
    tree = make_tree(6, 12)
    alignment = simulate_alignment(tree, 300, 1)
    stats = diff_rates(alignment)
    start = random_configuration(stats.labels, 3, 0.5, 1.0, 0)
    settings = OptimizerSettings(trace_every=5, max_iterations=20)
    reference = TraceReference(tree=tree, alignment=alignment)
    result = optimize(start, stats, settings, reference=reference)
    assert all(r.rf_to_reference is not None for r in result.trace)
    assert all(r.tree_loglik is not None and r.tree_loglik < 0 for r in result.trace)
