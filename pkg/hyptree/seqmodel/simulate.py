"""Sequence evolution along a tree under Jukes-Cantor."""

import logging

import numpy as np

from hyptree.exceptions import DomainError
from hyptree.seqmodel.alignment import Alignment
from hyptree.seqmodel.jukes_cantor import expected_diff_rate
from hyptree.treekit.tree import Tree
from hyptree.utils.seeds import make_rng

logger = logging.getLogger(__name__)


def simulate_alignment(tree: Tree, L: int, seed: int) -> Alignment:
    """Evolve L independent sites from a uniform root down every edge of ``tree``.

    On an edge of length t a site changes with probability 3 p_diff(t), and a
    changed site moves to one of the three other bases uniformly. Taxa are
    returned in sorted label order. The tree may be rooted anywhere, or
    unrooted, since the model is reversible.

    Raises:
        DomainError: If L is not positive
    """
    if L < 1:
        raise DomainError("Sequence length must be positive", f"L={L}")
    rng = make_rng(seed)
    states = np.empty((tree.n_nodes, L), dtype=np.uint8)
    states[0] = rng.integers(0, 4, size=L)
    for node in range(1, tree.n_nodes):
        parent = states[tree.parents[node]]
        changed = rng.random(L) < expected_diff_rate(tree.lengths[node])
        shift = rng.integers(1, 4, size=L)
        states[node] = np.where(changed, (parent + shift) % 4, parent)

    labels = tree.leaf_labels
    rows = states[[tree.node_of[label] for label in labels]]
    logger.debug("Simulated %d sites for %d taxa", L, len(labels))
    return Alignment.from_encoded(labels, rows)
