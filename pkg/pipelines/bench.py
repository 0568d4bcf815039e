"""
Benchmark harness.

Trains a forest on triangle data for every (d, T, seed), builds each formulation and records build time,
LP bound, MIP result and relaxation gap. Rows are streamed to a CSV sink in grid order as instances finish.
"""

import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path

from loguru import logger

from tree_mio.application.analysis.gaps import gap_percent
from tree_mio.application.fixtures.cart import train_forest
from tree_mio.application.fixtures.synthetic import gen_triangle_data
from tree_mio.application.formulations.dispatcher import build_formulation
from tree_mio.application.mip.core import relax
from tree_mio.application.solver.branch_and_bound import solve_mip
from tree_mio.application.solver.config import SolverConfig
from tree_mio.application.solver.simplex import solve_lp
from tree_mio.domain.results import BenchRow
from tree_mio.domain.types import FormulationKind, SolveStatus
from tree_mio.infrastructure.files_io import CsvRowSink
from tree_mio.settings import settings

BENCH_COLUMNS = list(BenchRow.model_fields)
FAILED_STATUS = "failed"


def _status_label(status: SolveStatus) -> str:
    if status.is_limit:
        return "limit"

    return status.value


def bench_instance(
    d: int,
    num_trees: int,
    seed: int,
    kinds: list[FormulationKind],
    depth: int,
    n_samples: int,
    config: SolverConfig,
) -> list[dict]:
    data = gen_triangle_data(d, n_samples, noise=True, seed=seed)
    ensemble = train_forest(data, num_trees, depth, seed=seed)

    rows = []
    for kind in kinds:
        started = time.perf_counter()
        model = build_formulation(ensemble, kind)
        build_ms = 1000.0 * (time.perf_counter() - started)

        lp = solve_lp(relax(model), config)
        started = time.perf_counter()
        mip = solve_mip(model, config)
        solve_ms = 1000.0 * (time.perf_counter() - started)

        gap = gap_percent(lp.objective, mip.objective) if lp.is_optimal and mip.objective is not None else None
        rows.append(
            BenchRow(
                seed=seed,
                d=d,
                T=num_trees,
                depth=depth,
                formulation=kind,
                build_ms=build_ms,
                solve_ms=solve_ms,
                status=_status_label(mip.status),
                mip_obj=mip.objective,
                lp_bound=lp.objective,
                gap_percent=gap,
                nodes=mip.nodes,
            ).model_dump(mode="json")
        )

    return rows


def failed_rows(d: int, num_trees: int, seed: int, kinds: list[FormulationKind], depth: int) -> list[dict]:
    """Placeholder rows for an instance whose training or solves raised."""

    return [
        BenchRow(
            seed=seed,
            d=d,
            T=num_trees,
            depth=depth,
            formulation=kind,
            build_ms=0.0,
            solve_ms=0.0,
            status=FAILED_STATUS,
            mip_obj=None,
            lp_bound=None,
            gap_percent=None,
            nodes=0,
        ).model_dump(mode="json")
        for kind in kinds
    ]


def run_bench(
    ds: list[int],
    Ts: list[int],
    seeds: list[int],
    kinds: list[FormulationKind] | None = None,
    depth: int = 4,
    n_samples: int = 200,
    time_limit_s: float | None = None,
    workers: int | None = None,
    out: str | Path | None = None,
) -> list[BenchRow]:
    """
    Runs the benchmark grid and returns its rows sorted by (d, T, seed, kind order).

    An instance that raises is logged and recorded with status "failed" for every kind; the grid goes on.
    CSV rows are written in grid order whatever the number of workers.

    Args:
        ds: Feature counts.
        Ts: Ensemble sizes.
        seeds: Seeds; each seeds both the data and the bootstrap.
        kinds: Formulations to compare (all eight by default).
        depth: Maximum tree depth.
        n_samples: Training samples per instance.
        time_limit_s: Branch-and-bound time limit per solve.
        workers: Worker processes (TREEMIO_BENCH_WORKERS by default).
        out: Optional CSV path.
    """

    kinds = kinds or list(FormulationKind)
    workers = workers or settings.TREEMIO_BENCH_WORKERS
    config = SolverConfig.from_settings(time_limit_s=time_limit_s)
    grid = [(d, T, seed) for d in ds for T in Ts for seed in seeds]
    sink = CsvRowSink(out, BENCH_COLUMNS) if out is not None else None

    logger.info("=" * 70)
    logger.info(f"🚀 Benchmark: {len(grid)} instances x {len(kinds)} formulations, {workers} worker(s)")
    logger.info("=" * 70)

    finished: dict[tuple[int, int, int], list[dict]] = {}
    flushed = 0

    def record(key: tuple[int, int, int], rows: list[dict]) -> None:
        nonlocal flushed
        finished[key] = rows
        # Completed instances are written once every earlier grid entry is in.
        while flushed < len(grid) and grid[flushed] in finished:
            if sink is not None:
                sink.write_rows(finished[grid[flushed]])
            flushed += 1

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {
                pool.submit(bench_instance, d, T, seed, kinds, depth, n_samples, config): (d, T, seed)
                for d, T, seed in grid
            }
            for future in as_completed(futures):
                d, T, seed = futures[future]
                try:
                    rows = future.result()
                except Exception:
                    logger.exception(f"Benchmark instance d={d} T={T} seed={seed} failed.")
                    rows = failed_rows(d, T, seed, kinds, depth)
                else:
                    logger.info(f"   done d={d} T={T} seed={seed}")
                record((d, T, seed), rows)
    else:
        for d, T, seed in grid:
            try:
                rows = bench_instance(d, T, seed, kinds, depth, n_samples, config)
            except Exception:
                logger.exception(f"Benchmark instance d={d} T={T} seed={seed} failed.")
                rows = failed_rows(d, T, seed, kinds, depth)
            else:
                logger.info(f"   done d={d} T={T} seed={seed}")
            record((d, T, seed), rows)

    order = {kind: i for i, kind in enumerate(kinds)}
    result = sorted(
        (BenchRow.model_validate(row) for rows in finished.values() for row in rows),
        key=lambda row: (row.d, row.T, row.seed, order[row.formulation]),
    )

    failures = sum(1 for rows in finished.values() if rows and rows[0]["status"] == FAILED_STATUS)
    if failures:
        logger.warning(f"⚠️ Benchmark finished with {failures} failed instance(s)")
    else:
        logger.info("✅ Benchmark finished")

    return result
