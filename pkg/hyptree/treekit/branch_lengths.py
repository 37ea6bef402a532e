"""Maximum-likelihood branch lengths on a fixed topology."""

import logging
from typing import List, Tuple

from scipy.optimize import minimize_scalar

from hyptree.seqmodel.alignment import Alignment
from hyptree.seqmodel.jukes_cantor import T_MAX
from hyptree.seqmodel.likelihood import (
    Partial,
    down_partials,
    edge_loglik,
    outside_partials,
    tip_partials,
    tree_loglik,
)
from hyptree.treekit.tree import Tree

logger = logging.getLogger(__name__)


def _negative_edge_loglik(t: float, outside: Partial, below: Partial) -> float:
    return -edge_loglik(outside, below, t)


def _edge_groups(tree: Tree) -> List[Tuple[int, ...]]:
    """Edges optimized jointly; the two edges at a bifurcating root form one group."""
    root_kids = tree.children[0]
    merged = len(root_kids) == 2
    groups: List[Tuple[int, ...]] = [root_kids] if merged else []
    groups.extend((c,) for c in range(1, tree.n_nodes) if not (merged and c in root_kids))
    return groups


def optimize_branch_lengths(
    tree: Tree,
    a: Alignment,
    tol: float = 1e-6,
    max_sweeps: int = 100,
    upper: float = T_MAX,
) -> Tuple[Tree, float]:
    """Tune every branch length for likelihood by coordinate ascent.

    Each edge is optimized in turn by bounded golden-section/parabolic search
    on [0, upper] to tolerance ``tol``, holding the others fixed; a new length
    is kept only if it does not lower the likelihood. Sweeps repeat until the
    total gain drops below ``tol``. A bifurcating root's two edges are tuned
    as one and split in their previous proportion.

    Returns:
        The tuned tree and its log-likelihood
    """
    tips = tip_partials(tree, a)
    lengths = list(tree.lengths)
    current = tree_loglik(tree, a)

    for sweep in range(max_sweeps):
        start = current
        for group in _edge_groups(tree):
            work = tree.with_lengths(lengths)
            down = down_partials(work, tips)
            if len(group) == 2:
                c1, c2 = group
                sides = (down[c1], down[c2])
                old = lengths[c1] + lengths[c2]
            else:
                (c,) = group
                sides = (outside_partials(work, down)[c], down[c])
                old = lengths[c]
            result = minimize_scalar(
                _negative_edge_loglik,
                bounds=(0.0, upper),
                args=sides,
                method="bounded",
                options={"xatol": tol},
            )
            best = float(result.x)
            value = -float(result.fun)
            if value < edge_loglik(sides[0], sides[1], old):
                continue
            if len(group) == 2:
                c1, c2 = group
                share = 0.5 if old == 0.0 else lengths[c1] / old
                lengths[c1], lengths[c2] = best * share, best * (1.0 - share)
            else:
                lengths[group[0]] = best
            current = value

        logger.debug("Branch-length sweep %d: loglik %.6f", sweep + 1, current)
        if current - start < tol:
            break

    tuned = tree.with_lengths(lengths)
    return tuned, tree_loglik(tuned, a)

