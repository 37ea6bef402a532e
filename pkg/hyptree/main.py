"""Command-line interface for hyptree."""

import json
import logging
import math
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

import click
import pandas as pd
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from hyptree import __version__
from hyptree.config import OptimizerSettings, SweepMode, get_settings
from hyptree.embedder import EmbeddingConfigIn, embed_tree
from hyptree.exceptions import HyptreeError, ParseError
from hyptree.hypgeom.fourpoint import max_quadruple_delta
from hyptree.hypgeom.poincare import to_poincare
from hyptree.models import CurvatureRecord, InitMode, StudyKind, StudyRecord, TreeShape
from hyptree.optimizer.configuration import PointConfiguration, config_distances
from hyptree.optimizer.tracing import JsonlTraceSink, TraceReference
from hyptree.pipeline import infer_tree
from hyptree.seqmodel.alignment import read_fasta, write_fasta
from hyptree.seqmodel.simulate import simulate_alignment
from hyptree.study.metrics import summarize, write_records
from hyptree.study.runner import (
    LENGTH_DEFAULTS,
    TAXA_DEFAULTS,
    CurvatureStudyConfig,
    StudyConfig,
    run_curvature_study,
    run_study,
)
from hyptree.treekit.distances import DistanceMatrix
from hyptree.treekit.generators import balanced_tree, random_topology, sample_edge_lengths
from hyptree.treekit.newick import read_newick, write_newick_file
from hyptree.treekit.rooting import midpoint_root
from hyptree.utils.logging import setup_logging
from hyptree.utils.manifest import build_manifest, read_manifest, replay_argv, write_manifest
from hyptree.utils.seeds import derive_seed

logger = logging.getLogger("hyptree")
console = Console()
settings = get_settings()

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NOT_CONVERGED = 3

app = typer.Typer(
    name="hyptree",
    help="Phylogenetic inference by gradient ascent on the hyperboloid",
    add_completion=False,
)


@app.callback()
def configure(
    debug: bool = typer.Option(settings.debug, "--debug", help="Enable debug logging"),
    log_file: Optional[str] = typer.Option(settings.log_file, "--log-file", help="Log file"),
) -> None:
    """Phylogenetic inference by gradient ascent on the hyperboloid."""
    setup_logging(debug, log_file)


@contextmanager
def reported_errors() -> Iterator[None]:
    """Turn library errors into exit codes: bad settings are usage errors, the rest data errors."""
    try:
        yield
    except ValidationError as e:
        console.print(f"[bold red]Invalid settings:[/bold red] {e}")
        raise typer.Exit(EXIT_USAGE)
    except HyptreeError as e:
        console.print(f"[bold red]Error:[/bold red] {e}")
        raise typer.Exit(EXIT_DATA)
    except OSError as e:
        console.print(f"[bold red]I/O error:[/bold red] {e}")
        raise typer.Exit(EXIT_DATA)


def optimizer_settings(
    lr: float,
    max_step: float,
    conv_threshold: float,
    max_iters: int,
    trace_every: int,
    mode: SweepMode = SweepMode.GAUSS_SEIDEL,
) -> OptimizerSettings:
    return OptimizerSettings(
        learning_rate=lr,
        max_step=max_step,
        convergence_threshold=conv_threshold,
        max_iterations=max_iters,
        trace_every=trace_every,
        mode=mode,
    )


def record_run(
    command: str,
    seed: int,
    arguments: Dict[str, Any],
    out: Path,
    inputs: List[Path],
    outputs: List[Path],
    hyperparameters: Optional[Dict[str, Any]] = None,
) -> None:
    manifest = build_manifest(
        command, seed, arguments, hyperparameters or {}, inputs, [p.name for p in outputs]
    )
    write_manifest(manifest, out)


def key_value_table(title: str, rows: Dict[str, Any]) -> Table:
    table = Table(title=title, show_header=True, header_style="bold magenta")
    table.add_column("Parameter", style="dim")
    table.add_column("Value")
    for key, value in rows.items():
        table.add_row(key, str(value))
    return table


@app.command()
def simulate(
    leaves: int = typer.Option(8, "--leaves", min=3, help="Number of taxa"),
    length: int = typer.Option(200, "--length", min=1, help="Sequence length"),
    lo: float = typer.Option(0.05, "--lo", help="Smallest edge length"),
    hi: float = typer.Option(0.2, "--hi", help="Largest edge length"),
    shape: TreeShape = typer.Option(TreeShape.RANDOM, "--shape", help="Generating tree shape"),
    seed: int = typer.Option(settings.seed, "--seed", help="Master random seed"),
    out: Path = typer.Option(Path("runs/simulate"), "--out", help="Output directory"),
) -> None:
    """Draw a tree and evolve sequences along it under Jukes-Cantor."""
    arguments = dict(locals())
    with reported_errors():
        out.mkdir(parents=True, exist_ok=True)
        if shape == TreeShape.BALANCED:
            topology = balanced_tree(leaves)
        else:
            topology = random_topology(leaves, derive_seed(seed, 0))
        tree = sample_edge_lengths(topology, lo, hi, derive_seed(seed, 1))
        alignment = simulate_alignment(tree, length, derive_seed(seed, 2))

        tree_path, fasta_path = out / "tree.nwk", out / "alignment.fasta"
        write_newick_file([tree], tree_path)
        write_fasta(alignment, fasta_path)
        record_run("simulate", seed, arguments, out, [], [tree_path, fasta_path])

    console.print(
        key_value_table(
            "Simulation",
            {"Taxa": alignment.n, "Sites": alignment.L, "Tree length": f"{tree.total_length:.4f}"},
        )
    )


@app.command()
def infer(
    alignment: Path = typer.Option(..., "--alignment", help="FASTA alignment"),
    rho: float = typer.Option(settings.rho, "--rho", help="Hyperboloid radius"),
    dim: int = typer.Option(settings.dim, "--dim", help="Hyperbolic dimension"),
    lr: float = typer.Option(settings.learning_rate, "--lr", help="Learning rate"),
    max_step: float = typer.Option(settings.max_step, "--max-step", help="Step length cap"),
    conv_threshold: float = typer.Option(
        settings.convergence_threshold, "--conv-threshold", help="Convergence threshold"
    ),
    max_iters: int = typer.Option(settings.max_iterations, "--max-iters", help="Sweep budget"),
    trace_every: int = typer.Option(settings.trace_every, "--trace-every", help="Trace period"),
    mode: SweepMode = typer.Option(SweepMode.GAUSS_SEIDEL, "--mode", help="Sweep order"),
    init: InitMode = typer.Option(InitMode.TREE, "--init", help="Starting configuration"),
    reference: Optional[Path] = typer.Option(
        None, "--reference", help="Newick tree to score the trace against"
    ),
    distance_cap: float = typer.Option(
        settings.distance_cap, "--distance-cap", help="Distance of saturated pairs"
    ),
    seed: int = typer.Option(settings.seed, "--seed", help="Random seed"),
    out: Path = typer.Option(Path("runs/infer"), "--out", help="Output directory"),
) -> None:
    """Infer a tree from an alignment by fitting points on the hyperboloid."""
    arguments = dict(locals())
    with reported_errors():
        opt = optimizer_settings(lr, max_step, conv_threshold, max_iters, trace_every, mode)
        data = read_fasta(alignment)
        ref = None
        if reference is not None:
            ref = TraceReference(tree=read_newick(reference)[0], alignment=data)
        out.mkdir(parents=True, exist_ok=True)
        paths = {
            name: out / name
            for name in ("tree.nwk", "distances.csv", "configuration.csv", "trace.jsonl")
        }
        with JsonlTraceSink(paths["trace.jsonl"]) as sink:
            result = infer_tree(
                data, rho, dim, opt, seed, init=init, tracer=sink, reference=ref, cap=distance_cap
            )
        write_newick_file([result.tree], paths["tree.nwk"])
        result.distances.to_csv(paths["distances.csv"])
        result.fit.config.to_csv(paths["configuration.csv"])
        inputs = [alignment] + ([reference] if reference else [])
        hyper = {"rho": rho, "dim": dim, **opt.model_dump(mode="json")}
        record_run("infer", seed, arguments, out, inputs, list(paths.values()), hyper)

    console.print(
        key_value_table(
            "Inference",
            {
                "Taxa": data.n,
                "Sites": data.L,
                "Sweeps": result.fit.iterations,
                "Converged": result.fit.converged,
                "Objective": f"{result.fit.objective:.6f}",
            },
        )
    )
    if not result.fit.converged:
        console.print("[bold yellow]Warning:[/bold yellow] optimizer did not converge")
        raise typer.Exit(EXIT_NOT_CONVERGED)


@app.command()
def embed(
    tree: Path = typer.Option(
        ..., "--tree", help="Newick tree; unrooted trees are midpoint-rooted"
    ),
    rho: float = typer.Option(settings.rho, "--rho", help="Hyperboloid radius"),
    dim: int = typer.Option(settings.dim, "--dim", help="Hyperbolic dimension"),
    seed: int = typer.Option(settings.seed, "--seed", help="Random seed"),
    out: Path = typer.Option(Path("runs/embed"), "--out", help="Output directory"),
) -> None:
    """Embed the leaves of a tree on the hyperboloid without optimization."""
    arguments = dict(locals())
    with reported_errors():
        guide = read_newick(tree)[0]
        if not guide.rooted:
            guide = midpoint_root(guide)
        config = embed_tree(EmbeddingConfigIn(tree=guide, m=dim, rho=rho, seed=seed))
        out.mkdir(parents=True, exist_ok=True)
        outputs = [out / "configuration.csv"]
        config.to_csv(outputs[0])
        if dim == 2:
            disc = pd.DataFrame(
                [to_poincare(p).coords for p in config.points],
                index=pd.Index(config.labels, name="taxon"),
                columns=["p1", "p2"],
            )
            outputs.append(out / "poincare.csv")
            disc.to_csv(outputs[-1], float_format="%.17g")
        record_run("embed", seed, arguments, out, [tree], outputs, {"rho": rho, "dim": dim})

    console.print(key_value_table("Embedding", {"Taxa": config.n, "Dimension": dim, "Radius": rho}))


@app.command()
def fourpoint(
    input_path: Path = typer.Option(
        ..., "--input", help="Configuration CSV (with a rho column) or distance matrix CSV"
    ),
    samples: int = typer.Option(10_000, "--samples", min=1, help="Quadruples to sample"),
    seed: int = typer.Option(settings.seed, "--seed", help="Sampling seed"),
    out: Path = typer.Option(Path("runs/fourpoint"), "--out", help="Output directory"),
) -> None:
    """Report the largest four-point defect of a configuration or distance matrix."""
    arguments = dict(locals())
    with reported_errors():
        header = pd.read_csv(input_path, index_col=0, nrows=0).columns
        bound = None
        if "rho" in header:
            config = PointConfiguration.from_csv(input_path)
            distances = config_distances(config)
            if config.m == 2:
                bound = config.rho * math.log(2.0)
        else:
            distances = DistanceMatrix.from_csv(input_path)
        worst = max_quadruple_delta(distances.d, samples, seed)
        report = {
            "delta": worst.delta,
            "quadruple": [distances.labels[i] for i in worst.indices],
            "bound": bound,
            "samples": samples,
        }
        out.mkdir(parents=True, exist_ok=True)
        report_path = out / "fourpoint.json"
        report_path.write_text(json.dumps(report, indent=2) + "\n")
        record_run("fourpoint", seed, arguments, out, [input_path], [report_path])

    rows = {"Max delta": f"{worst.delta:.10g}", "Quadruple": ", ".join(report["quadruple"])}
    if bound is not None:
        rows["Bound rho ln 2"] = f"{bound:.10g}"
    console.print(key_value_table("Four-point condition", rows))


def summary_table(summary: pd.DataFrame) -> Table:
    table = Table(title="Study summary", show_header=True, header_style="bold magenta")
    table.add_column("Grid", style="dim")
    table.add_column("Method")
    table.add_column("Runs", justify="right")
    table.add_column("Failures", justify="right")
    table.add_column("Topology", justify="right")
    table.add_column("Likelihood", justify="right")
    table.add_column("Mean RF", justify="right")
    for row in summary.itertuples(index=False):
        table.add_row(
            f"{row.grid_value:g}",
            str(row.method),
            str(row.runs),
            str(row.failures),
            f"{row.topology_rate:.1%}",
            f"{row.loglik_rate:.1%}",
            f"{row.mean_rf:.2f}",
        )
    return table


def curvature_table(records: List[CurvatureRecord]) -> Table:
    table = Table(title="Curvature study", show_header=True, header_style="bold magenta")
    table.add_column("rho", style="dim")
    table.add_column("m")
    table.add_column("Worst distance error", justify="right")
    table.add_column("Converged")
    frame = pd.DataFrame([r.model_dump() for r in records])
    frame["error"] = (frame["fitted_distance"] - frame["tree_distance"]).abs()
    grouped = frame.groupby(["rho", "dim"], sort=True).agg(
        error=("error", "max"), converged=("converged", "all")
    )
    for (rho, dim), row in grouped.iterrows():
        table.add_row(f"{rho:g}", str(dim), f"{row['error']:.4f}", str(bool(row["converged"])))
    return table


@app.command()
def study(
    kind: StudyKind = typer.Option(..., "--kind", help="Which study to run"),
    grid: Optional[List[float]] = typer.Option(
        None, "--grid", help="Grid values: leaf counts, sequence lengths or radii"
    ),
    trees: Optional[int] = typer.Option(None, "--trees", min=1, help="Trees per grid value"),
    replicates: Optional[int] = typer.Option(
        None, "--replicates", min=0, help="Alignments per tree"
    ),
    leaves: int = typer.Option(30, "--leaves", min=3, help="Taxa in length studies"),
    length: int = typer.Option(200, "--length", min=1, help="Sites in taxa studies"),
    lo: float = typer.Option(0.05, "--lo", help="Smallest edge length"),
    hi: float = typer.Option(0.2, "--hi", help="Largest edge length"),
    rho: float = typer.Option(settings.rho, "--rho", help="Hyperboloid radius"),
    dim: int = typer.Option(settings.dim, "--dim", help="Hyperbolic dimension"),
    lr: float = typer.Option(settings.learning_rate, "--lr", help="Learning rate"),
    max_step: float = typer.Option(settings.max_step, "--max-step", help="Step length cap"),
    conv_threshold: float = typer.Option(
        settings.convergence_threshold, "--conv-threshold", help="Convergence threshold"
    ),
    max_iters: int = typer.Option(settings.max_iterations, "--max-iters", help="Sweep budget"),
    mode: SweepMode = typer.Option(SweepMode.GAUSS_SEIDEL, "--mode", help="Sweep order"),
    dims: Optional[List[int]] = typer.Option(
        None, "--dims", help="Dimensions of a curvature study"
    ),
    edge: float = typer.Option(0.25, "--edge", help="Edge length of the curvature study tree"),
    distance_cap: float = typer.Option(
        settings.distance_cap, "--distance-cap", help="Distance of saturated pairs"
    ),
    workers: int = typer.Option(1, "--workers", min=1, help="Parallel workers"),
    seed: int = typer.Option(settings.seed, "--seed", help="Master random seed"),
    out: Path = typer.Option(Path("runs/study"), "--out", help="Output directory"),
) -> None:
    """Run a simulation study and write its tidy result table."""
    arguments = dict(locals())
    with reported_errors():
        opt = optimizer_settings(
            lr, max_step, conv_threshold, max_iters, settings.trace_every, mode
        )
        out.mkdir(parents=True, exist_ok=True)
        if kind == StudyKind.CURVATURE:
            curvature_cfg = CurvatureStudyConfig(
                optimizer=opt, edge_length=edge, seed=seed, workers=workers
            )
            updates: Dict[str, Any] = {}
            if grid:
                updates["rhos"] = list(grid)
            if dims:
                updates["dims"] = list(dims)
            curvature_cfg = CurvatureStudyConfig.model_validate(
                {**curvature_cfg.model_dump(), **updates}
            )
            curvature = run_curvature_study(curvature_cfg)
            outputs = [out / "curvature.csv"]
            write_records(curvature, CurvatureRecord, outputs[0])
            hyper = curvature_cfg.model_dump(mode="json")
        else:
            defaults = TAXA_DEFAULTS if kind == StudyKind.TAXA else LENGTH_DEFAULTS
            study_cfg = StudyConfig(
                kind=kind,
                grid=grid or defaults["grid"],
                n_trees=trees if trees is not None else defaults["n_trees"],
                replicates=replicates if replicates is not None else defaults["replicates"],
                n_leaves=leaves,
                length=length,
                lo=lo,
                hi=hi,
                rho=rho,
                dim=dim,
                optimizer=opt,
                distance_cap=distance_cap,
                seed=seed,
                workers=workers,
            )
            records = run_study(study_cfg)
            summary = summarize(records)
            outputs = [out / "study.csv", out / "summary.csv"]
            write_records(records, StudyRecord, outputs[0])
            summary.to_csv(outputs[1], index=False, float_format="%.17g")
            hyper = study_cfg.model_dump(mode="json")
        record_run("study", seed, arguments, out, [], outputs, hyper)

    if kind == StudyKind.CURVATURE:
        console.print(curvature_table(curvature))
    else:
        console.print(summary_table(summary))
    console.print(f"Results written to [bold]{out}[/bold]")


def command_flags(command: str) -> Dict[str, str]:
    """Map a command's parameter names to their first option string."""
    group = typer.main.get_command(app)
    cmd = group.commands.get(command)  # type: ignore[attr-defined]
    if cmd is None:
        raise ParseError("Manifest names an unknown command", command)
    return {p.name: p.opts[0] for p in cmd.params if p.opts}


@app.command()
def replay(
    manifest: Path = typer.Option(..., "--manifest", help="manifest.json or its directory"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write outputs here instead"),
) -> None:
    """Repeat a recorded run from its manifest."""
    with reported_errors():
        recorded = read_manifest(manifest)
        if recorded.command == "replay":
            raise ParseError("A replay manifest cannot be replayed")
        if recorded.version != __version__:
            logger.warning(
                "Manifest was written by hyptree %s, running %s", recorded.version, __version__
            )
        overrides = {"out": str(out)} if out is not None else {}
        argv = replay_argv(recorded, overrides, command_flags(recorded.command))
    logger.info("Replaying: hyptree %s", " ".join(argv))
    code = app(argv, standalone_mode=False)
    if code:
        raise typer.Exit(code)


def main() -> None:
    """Console entry point with stable exit codes."""
    try:
        code = app(standalone_mode=False)
    except click.exceptions.Exit as e:
        code = e.exit_code
    except (click.exceptions.UsageError, click.exceptions.Abort) as e:
        if isinstance(e, click.exceptions.UsageError):
            e.show()
        code = EXIT_USAGE
    sys.exit(code or 0)


if __name__ == "__main__":
    main()
