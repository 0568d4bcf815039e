"""
Pipelines package.

Benchmark, summary and verification runs built on top of tree_mio.
"""

from .bench import bench_instance, run_bench
from .summarize import summarize_bench, summarize_gaps, write_gnuplot
from .verify import SUITES, run_suite

__all__ = [
    # Benchmark
    "bench_instance",
    "run_bench",
    # Summaries
    "summarize_bench",
    "summarize_gaps",
    "write_gnuplot",
    # Verification
    "SUITES",
    "run_suite",
]
