"""Jukes-Cantor model, alignments, simulation and tree likelihood."""

from hyptree.seqmodel.alignment import (
    Alignment,
    DiffRateMatrix,
    diff_rates,
    expected_diff_rates,
    ml_distance_matrix,
    read_fasta,
    write_fasta,
)
from hyptree.seqmodel.jukes_cantor import (
    T_MAX,
    expected_diff_rate,
    jc_p_diff,
    jc_p_same,
    ml_pairwise_distance,
    pairwise_loglik,
)
from hyptree.seqmodel.likelihood import tree_loglik
from hyptree.seqmodel.simulate import simulate_alignment

__all__ = [
    "Alignment",
    "DiffRateMatrix",
    "T_MAX",
    "diff_rates",
    "expected_diff_rate",
    "expected_diff_rates",
    "jc_p_diff",
    "jc_p_same",
    "ml_distance_matrix",
    "ml_pairwise_distance",
    "pairwise_loglik",
    "read_fasta",
    "simulate_alignment",
    "tree_loglik",
    "write_fasta",
]
