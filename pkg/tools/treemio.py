"""
treemio CLI.

Builds, solves and verifies optimization formulations of tree ensembles.

Usage:
    # export a formulation as an LP file
    python tools/treemio.py build ex3.json --kind projected -o ex3.lp

    # solve with a side constraint
    python tools/treemio.py solve ex4.json --kind projected --constraint "w1+w2<=3"

    # run a verification suite
    python tools/treemio.py verify examples

    # desk-scale benchmark
    python tools/treemio.py bench --d 1,2 --T 1,2,4 --seeds 3 -o bench.csv --summary
"""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import click
import pandas as pd
from loguru import logger
from rich.console import Console
from rich.table import Table

from pipelines.bench import run_bench
from pipelines.summarize import summarize_bench, write_gnuplot
from pipelines.verify import SUITES, run_suite
from tree_mio.application.fixtures.cart import train_forest
from tree_mio.application.fixtures.paper import get_available_fixtures, paper_fixture
from tree_mio.application.fixtures.synthetic import gen_triangle_data
from tree_mio.application.formulations.constraints import attach_constraints, parse_constraint, set_objective
from tree_mio.application.formulations.dispatcher import build_formulation, get_available_formulations
from tree_mio.application.mip.core import model_stats, relax
from tree_mio.application.solver.branch_and_bound import solve_mip
from tree_mio.application.solver.config import SolverConfig
from tree_mio.application.solver.simplex import solve_lp
from tree_mio.domain.exceptions import EnsembleError, ModelError, UnsupportedFormulation
from tree_mio.domain.types import FormulationKind, ObjectiveSense
from tree_mio.infrastructure.files_io import EnsembleFileManager, LpFileManager
from tree_mio.settings import settings

EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    raise SystemExit(code)


def _load(path: str):
    try:
        return EnsembleFileManager.read(path)
    except (EnsembleError, FileNotFoundError) as e:
        _fail(str(e), EXIT_INPUT)


def _int_list(value: str) -> list[int]:
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError as e:
        raise click.BadParameter(f"expected a comma-separated list of integers, got '{value}'") from e


@click.group(help="Compile tree ensembles into MIO formulations, solve them and check their tightness.")
@click.option("--log-level", default=settings.TREEMIO_LOG_LEVEL, show_default=True, help="loguru level for stderr.")
def cli(log_level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=log_level.upper())


@cli.command(help="Write the formulation of an ensemble as an LP file and print its size.")
@click.argument("ensemble_path")
@click.option("--kind", type=click.Choice(get_available_formulations()), required=True, help="Formulation.")
@click.option("-o", "--out", "out_path", required=True, help="LP file to write.")
@click.option("--big-m", type=float, default=None, help="Override the big-M constant (bigm only).")
def build(ensemble_path: str, kind: str, out_path: str, big_m: float | None) -> None:
    ensemble = _load(ensemble_path)
    try:
        model = build_formulation(ensemble, kind, big_m=big_m)
        written = LpFileManager.write(out_path, model)
    except ModelError as e:
        _fail(str(e), EXIT_INPUT)

    click.echo(model_stats(model).to_text())
    logger.info(f"LP file written to {written}")


@cli.command(help="Solve the formulation of an ensemble and print the optimum.")
@click.argument("ensemble_path")
@click.option("--kind", type=click.Choice(get_available_formulations()), default="projected", show_default=True)
@click.option("--relax", "relaxed", is_flag=True, default=False, help="Solve the LP relaxation only.")
@click.option("--constraint", "constraints", multiple=True, help='Side constraint such as "w1+w2<=3".')
@click.option("--minimize", is_flag=True, default=False, help="Minimize the ensemble output.")
@click.option("--big-m", type=float, default=None, help="Override the big-M constant (bigm only).")
@click.option("--time-limit", type=float, default=None, help="Branch-and-bound time limit in seconds.")
def solve(
    ensemble_path: str,
    kind: str,
    relaxed: bool,
    constraints: tuple[str, ...],
    minimize: bool,
    big_m: float | None,
    time_limit: float | None,
) -> None:
    ensemble = _load(ensemble_path)
    try:
        rows = [parse_constraint(text, ensemble.num_features) for text in constraints]
    except EnsembleError as e:
        _fail(str(e), EXIT_INPUT)

    try:
        model = build_formulation(ensemble, kind, big_m=big_m)
        if rows:
            model = attach_constraints(model, rows)
    except UnsupportedFormulation as e:
        _fail(str(e), EXIT_UNSUPPORTED)

    if minimize:
        model = set_objective(model, ObjectiveSense.MINIMIZE)
    config = SolverConfig.from_settings(time_limit_s=time_limit)
    result = solve_lp(relax(model), config) if relaxed else solve_mip(model, config)

    click.echo(result.to_text())
    if result.values:
        for i in range(ensemble.num_features):
            if model.has_role("w", i):
                click.echo(f"w{i + 1}: {result.values[f'w{i + 1}']:.10g}")
    stats = model_stats(model)
    click.echo(f"variables: {stats.num_variables} constraints: {stats.num_constraints} binaries: {stats.num_binaries}")

    if not result.is_optimal:
        raise SystemExit(EXIT_FAILED)


@cli.command(help="Run a verification suite; exits with 1 when a check fails.")
@click.argument("suite", type=click.Choice(list(SUITES)))
@click.option("--seed", type=int, default=settings.TREEMIO_SEED, show_default=True)
def verify(suite: str, seed: int) -> None:
    report = run_suite(suite, seed=seed)
    click.echo(report.to_text())
    if not report.passed:
        raise SystemExit(EXIT_FAILED)


@cli.command(help="Benchmark the formulations on forests trained on triangle data.")
@click.option("--d", "ds", default="1,2,3", show_default=True, help="Comma-separated feature counts.")
@click.option("--T", "Ts", default="1,2,4,8", show_default=True, help="Comma-separated ensemble sizes.")
@click.option("--depth", type=int, default=4, show_default=True)
@click.option("--seeds", type=int, default=10, show_default=True, help="Number of seeds, starting at TREEMIO_SEED.")
@click.option("--kinds", default=",".join(get_available_formulations()), show_default=True)
@click.option("--n-samples", type=int, default=200, show_default=True)
@click.option("--time-limit", type=float, default=None, help="Branch-and-bound time limit per solve (seconds).")
@click.option("--workers", type=int, default=None, help="Worker processes (TREEMIO_BENCH_WORKERS).")
@click.option("-o", "--out", "out_path", default=None, help="CSV file; rows go to stdout when omitted.")
@click.option("--summary", is_flag=True, default=False, help="Print the mean-time table.")
@click.option("--gnuplot", "gnuplot_path", default=None, help="Also write a gnuplot data table.")
def bench(
    ds: str,
    Ts: str,
    depth: int,
    seeds: int,
    kinds: str,
    n_samples: int,
    time_limit: float | None,
    workers: int | None,
    out_path: str | None,
    summary: bool,
    gnuplot_path: str | None,
) -> None:
    try:
        selected = [FormulationKind(kind.strip()) for kind in kinds.split(",") if kind.strip()]
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--kinds") from e

    rows = run_bench(
        _int_list(ds),
        _int_list(Ts),
        list(range(settings.TREEMIO_SEED, settings.TREEMIO_SEED + seeds)),
        kinds=selected,
        depth=depth,
        n_samples=n_samples,
        time_limit_s=time_limit,
        workers=workers,
        out=out_path,
    )
    frame = pd.DataFrame([row.model_dump(mode="json") for row in rows])
    if out_path is None:
        click.echo(frame.to_csv(index=False), nl=False)

    if summary:
        table = Table(title="Mean solve time (s)")
        for column in ("T", "formulation", "mean_s", "pct_limit"):
            table.add_column(column)
        for record in summarize_bench(frame, time_limit).itertuples(index=False):
            table.add_row(str(record.T), str(record.formulation), f"{record.mean_s:.4g}", f"{record.pct_limit:.0f}%")
        Console(stderr=True).print(table)
    if gnuplot_path is not None:
        write_gnuplot(frame, gnuplot_path, time_limit)


@cli.group(help="Generate ensemble files.")
def gen() -> None:
    pass


@gen.command(name="fixture", help="Write one of the worked-example ensembles.")
@click.argument("name", type=click.Choice(get_available_fixtures()))
@click.option("-o", "--out", "out_path", required=True)
def gen_fixture(name: str, out_path: str) -> None:
    written = EnsembleFileManager.write(out_path, paper_fixture(name).ensemble)
    click.echo(str(written))


@gen.command(name="forest", help="Train a forest on triangle data and write it.")
@click.option("--d", "d", type=int, default=2, show_default=True)
@click.option("--T", "num_trees", type=int, default=4, show_default=True)
@click.option("--depth", type=int, default=4, show_default=True)
@click.option("--n-samples", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=settings.TREEMIO_SEED, show_default=True)
@click.option("--noise/--no-noise", default=True, show_default=True)
@click.option("-o", "--out", "out_path", required=True)
def gen_forest(d: int, num_trees: int, depth: int, n_samples: int, seed: int, noise: bool, out_path: str) -> None:
    data = gen_triangle_data(d, n_samples, noise=noise, seed=seed)
    written = EnsembleFileManager.write(out_path, train_forest(data, num_trees, depth, seed=seed))
    click.echo(str(written))


if __name__ == "__main__":
    cli()
