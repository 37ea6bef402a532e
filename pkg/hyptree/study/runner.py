"""Simulation studies comparing the built-in inference methods."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from hyptree.config import DEFAULT_DISTANCE_CAP, OptimizerSettings
from hyptree.exceptions import HyptreeError
from hyptree.models import CurvatureRecord, InitMode, Method, StudyKind, StudyRecord
from hyptree.pipeline import fit_tree, infer_tree, nj_baseline
from hyptree.seqmodel.alignment import Alignment, diff_rates, expected_diff_rates
from hyptree.seqmodel.simulate import simulate_alignment
from hyptree.treekit.branch_lengths import optimize_branch_lengths
from hyptree.treekit.compare import rf_distance
from hyptree.treekit.distances import leaf_distances
from hyptree.treekit.generators import balanced_tree, random_topology, sample_edge_lengths
from hyptree.treekit.tree import Tree
from hyptree.utils.seeds import derive_seed

logger = logging.getLogger(__name__)

# Log-likelihoods are compared after rounding to this many decimals.
LOGLIK_DECIMALS = 6
# Seed roles under (grid index, tree id)
TREE_ROLE = 0
ALIGNMENT_ROLE = 1

TAXA_DEFAULTS = {"grid": [5.0, 10.0, 20.0], "n_trees": 10, "replicates": 4}
LENGTH_DEFAULTS = {"grid": [100.0, 750.0], "n_trees": 8, "replicates": 12}


class StudyConfig(BaseModel):
    """Grid, replication and model settings of a simulation study.

    For ``taxa`` studies the grid holds leaf counts and ``length`` is fixed;
    for ``length`` studies the grid holds sequence lengths and ``n_leaves`` is
    fixed.
    """

    kind: StudyKind
    grid: List[float] = Field(..., min_length=1)
    n_trees: int = Field(..., ge=1)
    replicates: int = Field(..., ge=0)
    n_leaves: int = Field(30, ge=3)
    length: int = Field(200, ge=1)
    lo: float = Field(0.05, ge=0)
    hi: float = Field(0.2, ge=0)
    rho: float = Field(0.5, gt=0)
    dim: int = Field(30, ge=2)
    optimizer: OptimizerSettings = Field(default_factory=OptimizerSettings)
    methods: List[Method] = Field(default_factory=lambda: [Method.NJ, Method.HYPERBOLIC])
    distance_cap: float = Field(DEFAULT_DISTANCE_CAP, gt=0)
    seed: int = 0
    workers: int = Field(1, ge=1)

    @model_validator(mode="after")
    def check_grid(self) -> "StudyConfig":
        if self.kind == StudyKind.CURVATURE:
            raise ValueError("curvature studies are configured with CurvatureStudyConfig")
        if self.lo > self.hi:
            raise ValueError("lo must not exceed hi")
        minimum = 3 if self.kind == StudyKind.TAXA else 1
        if any(v < minimum or v != int(v) for v in self.grid):
            raise ValueError(f"grid values must be integers >= {minimum}")
        return self


def _shape(cfg: StudyConfig, value: float) -> Tuple[int, int]:
    """(n_leaves, length) at one grid value."""
    if cfg.kind == StudyKind.TAXA:
        return int(value), cfg.length
    return cfg.n_leaves, int(value)


def _tuned_loglik(tree: Tree, alignment: Alignment, cap: float) -> float:
    _, loglik = optimize_branch_lengths(tree, alignment, upper=cap)
    return round(loglik, LOGLIK_DECIMALS)


def unit_seeds(master: int, grid_index: int, tree_id: int, replicate: int) -> Tuple[int, int]:
    """Seeds of the generating tree and of one replicate alignment on it."""
    tree_seed = derive_seed(master, grid_index, tree_id, TREE_ROLE)
    return tree_seed, derive_seed(master, grid_index, tree_id, ALIGNMENT_ROLE, replicate)


def _run_replicate(
    cfg: StudyConfig, grid_index: int, tree_id: int, replicate: int
) -> List[StudyRecord]:
    value = cfg.grid[grid_index]
    n_leaves, length = _shape(cfg, value)
    tree_seed, seed = unit_seeds(cfg.seed, grid_index, tree_id, replicate)
    generating = sample_edge_lengths(
        random_topology(n_leaves, tree_seed), cfg.lo, cfg.hi, derive_seed(tree_seed, 1)
    )
    alignment = simulate_alignment(generating, length, seed)
    generating_loglik = _tuned_loglik(generating, alignment, cfg.distance_cap)

    records = []
    for method in cfg.methods:
        base = dict(
            kind=cfg.kind, grid_value=value, tree_id=tree_id, replicate=replicate, method=method
        )
        start = time.perf_counter()
        try:
            converged = None
            if method == Method.NJ:
                inferred = nj_baseline(diff_rates(alignment), cfg.distance_cap)
            else:
                result = infer_tree(
                    alignment, cfg.rho, cfg.dim, cfg.optimizer, seed, cap=cfg.distance_cap
                )
                inferred, converged = result.tree, result.fit.converged
            record = StudyRecord(
                **base,
                rf_distance=rf_distance(inferred, generating),
                loglik_inferred=_tuned_loglik(inferred, alignment, cfg.distance_cap),
                loglik_generating=generating_loglik,
                converged=converged,
                wall_time_s=time.perf_counter() - start,
            )
        except HyptreeError as e:
            logger.warning(
                "%s failed on tree %d replicate %d: %s", method.value, tree_id, replicate, e
            )
            record = StudyRecord(**base, wall_time_s=time.perf_counter() - start, error=str(e))
        records.append(record)
    return records


def run_study(cfg: StudyConfig) -> List[StudyRecord]:
    """Score every method on simulated data over the grid.

    Each (grid value, tree, replicate) unit draws its seeds from the master
    seed and its own indices, so results do not depend on how the units are
    scheduled across workers. Failures are recorded per row.

    Returns:
        Records sorted by grid value, tree, replicate and method
    """
    units = [
        (g, t, r)
        for g in range(len(cfg.grid))
        for t in range(cfg.n_trees)
        for r in range(cfg.replicates)
    ]
    logger.info(
        "Running %s study: %d units on %d workers", cfg.kind.value, len(units), cfg.workers
    )
    with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        futures = [executor.submit(_run_replicate, cfg, *unit) for unit in units]
        records = [rec for f in futures for rec in f.result()]
    order = {m: k for k, m in enumerate(cfg.methods)}
    records.sort(key=lambda r: (r.grid_value, r.tree_id, r.replicate, order[r.method]))
    return records


class CurvatureStudyConfig(BaseModel):
    """Fits of the balanced example tree over a grid of radii and dimensions."""

    rhos: List[float] = Field(default_factory=lambda: [0.2, 0.5, 1.0], min_length=1)
    dims: List[int] = Field(default_factory=lambda: [2, 3], min_length=1)
    edge_length: float = Field(0.25, gt=0)
    n_leaves: int = Field(8, ge=2)
    optimizer: OptimizerSettings = Field(default_factory=OptimizerSettings)
    seed: int = 0
    workers: int = Field(1, ge=1)

    @model_validator(mode="after")
    def check_grid(self) -> "CurvatureStudyConfig":
        if any(r <= 0 for r in self.rhos) or any(m < 2 for m in self.dims):
            raise ValueError("radii must be positive and dimensions at least 2")
        return self


def _fit_curvature(
    cfg: CurvatureStudyConfig, tree: Tree, rho: float, m: int
) -> List[CurvatureRecord]:
    stats = expected_diff_rates(tree)
    result = fit_tree(stats, rho, m, cfg.optimizer, derive_seed(cfg.seed, m), init=InitMode.TREE)
    truth = leaf_distances(tree)
    fitted = result.distances.reindex(truth.labels)
    return [
        CurvatureRecord(
            rho=rho,
            dim=m,
            taxon=label,
            tree_distance=float(truth.d[0, k]),
            fitted_distance=float(fitted.d[0, k]),
            converged=result.fit.converged,
        )
        for k, label in enumerate(truth.labels)
    ]


def run_curvature_study(cfg: CurvatureStudyConfig) -> List[CurvatureRecord]:
    """Distances from the first leaf of the balanced tree after fitting noiseless statistics.

    Returns:
        One record per (rho, m, taxon), the first taxon included at distance 0
    """
    tree = balanced_tree(cfg.n_leaves, cfg.edge_length)
    jobs = [(rho, m) for rho in cfg.rhos for m in cfg.dims]
    with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        futures = [executor.submit(_fit_curvature, cfg, tree, rho, m) for rho, m in jobs]
        records = [rec for f in futures for rec in f.result()]
    worst = max((abs(r.fitted_distance - r.tree_distance) for r in records), default=np.nan)
    logger.info("Curvature study: %d fits, worst distance error %.4f", len(jobs), worst)
    return records
