"""Riemannian gradient ascent on the pairwise objective."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from hyptree.config import OptimizerSettings, SweepMode
from hyptree.exceptions import OptimizerError
from hyptree.models import TraceRecord
from hyptree.optimizer.configuration import PointConfiguration, config_distances
from hyptree.optimizer.kernels import STATUS_OK, gauss_seidel_sweep, jacobi_sweep
from hyptree.optimizer.objective import aligned_rates, coords_objective
from hyptree.optimizer.tracing import TraceReference, TraceSink
from hyptree.seqmodel.alignment import DiffRateMatrix
from hyptree.treekit.branch_lengths import optimize_branch_lengths
from hyptree.treekit.compare import rf_distance
from hyptree.treekit.nj import neighbor_joining

logger = logging.getLogger(__name__)


@dataclass
class OptimizationResult:
    """Final configuration of an ascent run and how it ended."""

    config: PointConfiguration
    trace: List[TraceRecord] = field(default_factory=list)
    converged: bool = False
    iterations: int = 0
    objective: float = float("-inf")


def _sweep(
    coords: np.ndarray,
    rates: np.ndarray,
    rho: float,
    settings: OptimizerSettings,
    labels: Tuple[str, ...],
) -> float:
    """Run one sweep in place and return the largest step taken.

    Raises:
        OptimizerError: If a gradient is not finite
    """
    kernel = jacobi_sweep if settings.mode == SweepMode.JACOBI else gauss_seidel_sweep
    largest, collisions, status, i, j = kernel(
        coords, rates, rho, settings.learning_rate, settings.max_step
    )
    if collisions:
        logger.warning("Separated %d coincident points with differing sequences", collisions)
    if status != STATUS_OK:
        raise OptimizerError(
            "Gradient ascent hit a non-finite gradient", pair=(labels[i], labels[j])
        )
    return float(largest)


def ascent_step(
    config: PointConfiguration, stats: DiffRateMatrix, settings: OptimizerSettings
) -> Tuple[PointConfiguration, float]:
    """Move every point once along its truncated gradient.

    In Gauss-Seidel mode the points are updated in index order and each
    gradient sees the points already moved in this sweep.

    Returns:
        The updated configuration and the largest distance any point moved

    Raises:
        DomainError: If the configuration and the statistics cover different taxa
        OptimizerError: If a gradient is not finite
    """
    rates = aligned_rates(config, stats)
    coords = np.array(config.coords)
    largest = _sweep(coords, rates, config.rho, settings, config.labels)
    return PointConfiguration(coords, config.rho, config.labels), largest


def _record(
    iteration: int,
    coords: np.ndarray,
    rates: np.ndarray,
    stats: DiffRateMatrix,
    config: PointConfiguration,
    largest: float,
    reference: Optional[TraceReference],
) -> TraceRecord:
    value = coords_objective(coords, rates, stats.L, config.rho)
    if not np.isfinite(value):
        raise OptimizerError("Objective is not finite", f"iteration {iteration}")
    rf = loglik = None
    if reference is not None and (reference.tree is not None or reference.alignment is not None):
        snapshot = PointConfiguration(coords, config.rho, config.labels)
        inferred = neighbor_joining(config_distances(snapshot))
        if reference.tree is not None:
            rf = rf_distance(inferred, reference.tree)
        if reference.alignment is not None:
            _, loglik = optimize_branch_lengths(inferred, reference.alignment)
    return TraceRecord(
        iteration=iteration,
        objective=value,
        max_step_taken=largest,
        rf_to_reference=rf,
        tree_loglik=loglik,
    )


def optimize(
    initial: PointConfiguration,
    stats: DiffRateMatrix,
    settings: OptimizerSettings,
    tracer: Optional[TraceSink] = None,
    reference: Optional[TraceReference] = None,
) -> OptimizationResult:
    """Repeat sweeps until no point moves further than the convergence threshold.

    A trace record is taken before the first sweep, after every
    ``trace_every`` sweeps and after the last sweep. When ``reference`` is
    given the records also score the neighbor-joining tree of the current
    configuration against it.

    Args:
        initial: Starting configuration
        stats: Pairwise difference rates of the taxa
        settings: Ascent hyperparameters
        tracer: Optional sink receiving every record as it is produced
        reference: Optional reference tree and alignment for the trace

    Returns:
        The final configuration, its trace and whether the run converged

    Raises:
        DomainError: If the configuration and the statistics cover different taxa
        OptimizerError: If a gradient or the objective is not finite
    """
    rates = aligned_rates(initial, stats)
    coords = np.array(initial.coords)
    trace: List[TraceRecord] = []

    def emit(iteration: int, largest: float) -> None:
        record = _record(iteration, coords, rates, stats, initial, largest, reference)
        trace.append(record)
        if tracer is not None:
            tracer.emit(record)
        logger.debug(
            "Sweep %d: objective %.6f, max step %.3e", iteration, record.objective, largest
        )

    emit(0, 0.0)
    converged = False
    iteration = 0
    largest = 0.0
    while iteration < settings.max_iterations:
        iteration += 1
        largest = _sweep(coords, rates, initial.rho, settings, initial.labels)
        converged = largest < settings.convergence_threshold
        if iteration % settings.trace_every == 0 or converged:
            emit(iteration, largest)
        if converged:
            break
    if trace[-1].iteration != iteration:
        emit(iteration, largest)

    final = PointConfiguration(coords, initial.rho, initial.labels)
    if converged:
        logger.info("Converged after %d sweeps", iteration)
    else:
        logger.warning(
            "No convergence after %d sweeps (last max step %.3e)", iteration, largest
        )
    return OptimizationResult(final, trace, converged, iteration, trace[-1].objective)
