"""Aggregates benchmark rows into per-(T, formulation) timing tables and gap summaries."""

from pathlib import Path

import numpy as np
import pandas as pd

from .bench import FAILED_STATUS


def _completed(df: pd.DataFrame) -> pd.DataFrame:
    if "status" not in df.columns:
        return df

    return df[df["status"] != FAILED_STATUS]


def _truncated_seconds(df: pd.DataFrame, time_limit_s: float | None) -> pd.Series:
    seconds = df["solve_ms"] / 1000.0
    if time_limit_s is not None:
        seconds = seconds.where(df["status"] != "limit", time_limit_s).clip(upper=time_limit_s)

    return seconds


def summarize_bench(df: pd.DataFrame, time_limit_s: float | None = None) -> pd.DataFrame:
    """
    Mean solve time per (T, formulation), with rows that hit the limit counted at the limit, and the share of
    rows over the limit. Per formulation, a final row with T = "geomean" holds the geometric mean over T.

    Returns:
        pd.DataFrame: Columns T, formulation, mean_s, pct_limit.
    """

    df = _completed(df)
    if df.empty:
        return pd.DataFrame(columns=["T", "formulation", "mean_s", "pct_limit"])

    frame = df.assign(seconds=_truncated_seconds(df, time_limit_s), over=df["status"] == "limit")
    table = (
        frame.groupby(["T", "formulation"], sort=True)
        .agg(mean_s=("seconds", "mean"), pct_limit=("over", "mean"))
        .reset_index()
    )
    table["pct_limit"] *= 100.0

    geomean = (
        table.groupby("formulation")
        .agg(
            mean_s=("mean_s", lambda s: float(np.exp(np.log(s.clip(lower=1e-12)).mean()))),
            pct_limit=("pct_limit", "mean"),
        )
        .reset_index()
        .assign(T="geomean")
    )
    table["T"] = table["T"].astype(object)

    return pd.concat([table, geomean[table.columns]], ignore_index=True)


def summarize_gaps(df: pd.DataFrame) -> pd.DataFrame:
    """Mean relaxation gap (percent) per (d, T) and formulation."""

    df = _completed(df)
    if df.empty:
        return pd.DataFrame()

    return df.groupby(["d", "T", "formulation"])["gap_percent"].mean().unstack("formulation")


def write_gnuplot(df: pd.DataFrame, out: str | Path, time_limit_s: float | None = None) -> Path:
    """Writes a whitespace-separated table of mean solve seconds: one row per T, one column per formulation."""

    file_path = Path(out).resolve().absolute()
    file_path.parent.mkdir(parents=True, exist_ok=True)

    df = _completed(df)
    frame = df.assign(seconds=_truncated_seconds(df, time_limit_s))
    table = frame.groupby(["T", "formulation"])["seconds"].mean().unstack("formulation").sort_index()
    lines = ["# T " + " ".join(str(kind) for kind in table.columns)]
    for T, row in table.iterrows():
        lines.append(f"{T} " + " ".join(f"{value:.6g}" for value in row.to_numpy()))
    file_path.write_text("\n".join(lines) + "\n")

    return file_path
