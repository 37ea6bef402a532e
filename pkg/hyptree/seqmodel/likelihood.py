"""Full-tree Jukes-Cantor likelihood by post-order pruning.

Partial likelihoods are (L, 4) arrays rescaled per site; the log of every
scale factor is carried alongside so that long alignments do not underflow.
"""

import logging
from typing import List, Tuple

import numpy as np

from hyptree.exceptions import DomainError
from hyptree.seqmodel.alignment import Alignment
from hyptree.seqmodel.jukes_cantor import jc_p_diff, jc_p_same
from hyptree.treekit.tree import Tree

logger = logging.getLogger(__name__)

# Uniform stationary distribution.
PI = 0.25

Partial = Tuple[np.ndarray, np.ndarray]


def _transition(v: np.ndarray, t: float) -> np.ndarray:
    """Apply the JC transition matrix P(t) to every row of v."""
    p_same = jc_p_same(t)
    p_diff = jc_p_diff(t)
    return p_diff * v.sum(axis=1, keepdims=True) + (p_same - p_diff) * v


def _rescale(v: np.ndarray, log_scale: np.ndarray) -> Partial:
    top = v.max(axis=1)
    safe = np.where(top > 0.0, top, 1.0)
    with np.errstate(divide="ignore"):
        return v / safe[:, None], log_scale + np.log(np.where(top > 0.0, top, 0.0))


def tip_partials(tree: Tree, a: Alignment) -> List[np.ndarray]:
    """One-hot partials of the leaves, indexed by node; internal entries are empty.

    Raises:
        DomainError: If the tree leaves and alignment taxa differ
    """
    if set(tree.leaf_labels) != set(a.taxa):
        missing = set(tree.leaf_labels) ^ set(a.taxa)
        raise DomainError("Tree leaves and alignment taxa differ", ", ".join(sorted(missing)))
    eye = np.eye(4)
    codes = a.encoded
    row_of = {t: i for i, t in enumerate(a.taxa)}
    tips: List[np.ndarray] = [np.empty((0, 4))] * tree.n_nodes
    for node in tree.leaves:
        tips[node] = eye[codes[row_of[tree.names[node]]]]  # type: ignore[index]
    return tips


def down_partials(tree: Tree, tips: List[np.ndarray]) -> List[Partial]:
    """Conditional likelihood of the subtree below every node."""
    L = next(t.shape[0] for t in tips if t.shape[0])
    out: List[Partial] = [(np.empty(0), np.empty(0))] * tree.n_nodes
    for node in range(tree.n_nodes - 1, -1, -1):
        kids = tree.children[node]
        if not kids:
            out[node] = (tips[node], np.zeros(L))
            continue
        v = np.ones((L, 4))
        scale = np.zeros(L)
        for c in kids:
            cv, cs = out[c]
            v = v * _transition(cv, tree.lengths[c])
            scale = scale + cs
        out[node] = _rescale(v, scale)
    return out


def outside_partials(tree: Tree, down: List[Partial]) -> List[Partial]:
    """For every non-root node c, the partial at parent(c) of everything outside c's subtree."""
    L = down[0][0].shape[0]
    out: List[Partial] = [(np.empty(0), np.empty(0))] * tree.n_nodes
    for node in range(tree.n_nodes):
        kids = tree.children[node]
        if not kids:
            continue
        if node == 0:
            above, above_scale = np.ones((L, 4)), np.zeros(L)
        else:
            ov, os_ = out[node]
            above, above_scale = _transition(ov, tree.lengths[node]), os_
        moved = [_transition(down[c][0], tree.lengths[c]) for c in kids]
        for k, c in enumerate(kids):
            v = above.copy()
            scale = above_scale.copy()
            for k2, s in enumerate(kids):
                if k2 != k:
                    v = v * moved[k2]
                    scale = scale + down[s][1]
            out[c] = _rescale(v, scale)
    return out


def edge_loglik(outside: Partial, below: Partial, t: float) -> float:
    """Log-likelihood of the tree with the edge joining the two partials set to t."""
    av, a_scale = outside
    bv, b_scale = below
    p_same = jc_p_same(t)
    p_diff = jc_p_diff(t)
    site = PI * (
        p_diff * av.sum(axis=1) * bv.sum(axis=1) + (p_same - p_diff) * (av * bv).sum(axis=1)
    )
    with np.errstate(divide="ignore"):
        return float(np.sum(np.log(site) + a_scale + b_scale))


def tree_loglik(tree: Tree, a: Alignment) -> float:
    """Jukes-Cantor log-likelihood of an alignment on a tree, root distribution included.

    Raises:
        DomainError: If the tree leaves and alignment taxa differ
    """
    down = down_partials(tree, tip_partials(tree, a))
    v, scale = down[0]
    with np.errstate(divide="ignore"):
        return float(np.sum(np.log(PI * v.sum(axis=1)) + scale))
