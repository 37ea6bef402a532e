"""Tree inference pipelines shared by the command line and the study harness."""

import logging
from dataclasses import dataclass
from typing import Any, Optional

from hyptree.config import DEFAULT_DISTANCE_CAP, OptimizerSettings
from hyptree.embedder import EmbeddingConfigIn, embed_tree
from hyptree.exceptions import DomainError
from hyptree.models import InitMode
from hyptree.optimizer.ascent import OptimizationResult, optimize
from hyptree.optimizer.configuration import config_distances, random_configuration
from hyptree.optimizer.tracing import TraceReference, TraceSink
from hyptree.seqmodel.alignment import Alignment, DiffRateMatrix, diff_rates, ml_distance_matrix
from hyptree.treekit.branch_lengths import optimize_branch_lengths
from hyptree.treekit.distances import DistanceMatrix
from hyptree.treekit.nj import neighbor_joining
from hyptree.treekit.rooting import midpoint_root
from hyptree.treekit.tree import Tree

logger = logging.getLogger(__name__)


@dataclass
class InferenceResult:
    """Outputs of a hyperbolic fit."""

    tree: Tree
    distances: DistanceMatrix
    fit: OptimizationResult
    guide_tree: Optional[Tree] = None


def nj_baseline(stats: DiffRateMatrix, cap: float = DEFAULT_DISTANCE_CAP) -> Tree:
    """Neighbor joining on independent maximum-likelihood pairwise distances."""
    return neighbor_joining(ml_distance_matrix(stats, cap))


def guide_tree(
    stats: DiffRateMatrix,
    alignment: Optional[Alignment] = None,
    cap: float = DEFAULT_DISTANCE_CAP,
) -> Tree:
    """Rooted starting tree: NJ on ML distances, lengths tuned when sequences are given."""
    tree = nj_baseline(stats, cap)
    if alignment is not None:
        tree, loglik = optimize_branch_lengths(tree, alignment, upper=cap)
        logger.info("Guide tree log-likelihood %.4f after branch-length tuning", loglik)
    return midpoint_root(tree)


def fit_tree(
    stats: DiffRateMatrix,
    rho: float,
    m: int,
    settings: OptimizerSettings,
    seed: int,
    alignment: Optional[Alignment] = None,
    init: InitMode = InitMode.TREE,
    tracer: Optional[TraceSink] = None,
    reference: Optional[TraceReference] = None,
    cap: float = DEFAULT_DISTANCE_CAP,
    random_radius: float = 1.0,
) -> InferenceResult:
    """Fit a configuration to difference rates and read the tree off its distances.

    Args:
        stats: Pairwise difference rates
        rho: Hyperboloid radius
        m: Hyperbolic dimension
        settings: Ascent hyperparameters
        seed: Seed of the embedding planes or the random start
        alignment: Sequences behind ``stats``, used to tune the guide tree
        init: Start from the embedded guide tree or from random points
        tracer: Optional trace sink
        reference: Optional reference for RF and likelihood trace fields
        cap: Distance assigned to saturated pairs
        random_radius: Spread of the random start

    Returns:
        The NJ tree of the fitted distances with the fit itself

    Raises:
        DomainError: If fewer than three taxa are given
    """
    if stats.n < 3:
        raise DomainError("Tree inference needs at least 3 taxa", f"N={stats.n}")
    guide: Optional[Tree] = None
    if init == InitMode.TREE:
        guide = guide_tree(stats, alignment, cap)
        initial = embed_tree(EmbeddingConfigIn(tree=guide, m=m, rho=rho, seed=seed))
    else:
        initial = random_configuration(stats.labels, m, rho, random_radius, seed)

    fit = optimize(initial, stats, settings, tracer=tracer, reference=reference)
    distances = config_distances(fit.config)
    tree = neighbor_joining(distances)
    logger.info(
        "Hyperbolic fit %s after %d sweeps, objective %.6f",
        "converged" if fit.converged else "did not converge",
        fit.iterations,
        fit.objective,
    )
    return InferenceResult(tree, distances, fit, guide)


def infer_tree(
    alignment: Alignment,
    rho: float,
    m: int,
    settings: OptimizerSettings,
    seed: int,
    **kwargs: Any,
) -> InferenceResult:
    """Infer a tree from an alignment by hyperbolic embedding; see :func:`fit_tree`."""
    return fit_tree(diff_rates(alignment), rho, m, settings, seed, alignment=alignment, **kwargs)
