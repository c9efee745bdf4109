"""CSV time series and JSON histogram snapshots."""

from __future__ import annotations

import csv
import json
from pathlib import Path

from wealthsim.engine import RunResult
from wealthsim.metrics import MetricsFrame
from wealthsim.scenario_io.scenario import scenario_to_document

TIMESERIES_HEADER = ("iteration", "gini", "share_bottom50", "share_top10", "share_top1", "total_wealth")


def _fmt(value: float) -> str:
    # repr is the shortest string that round-trips to the same double
    return repr(float(value))


def write_timeseries(result: RunResult, destination) -> None:
    with open(destination, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TIMESERIES_HEADER)
        for f in result.frames:
            writer.writerow(
                [f.iteration, _fmt(f.gini), _fmt(f.share_bottom50), _fmt(f.share_top10),
                 _fmt(f.share_top1), _fmt(f.total_wealth)]
            )


def read_timeseries(source) -> list[MetricsFrame]:
    with open(source, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != TIMESERIES_HEADER:
            raise ValueError(f"unexpected header {header}")
        return [
            MetricsFrame(int(row[0]), *(float(v) for v in row[1:]))
            for row in reader
        ]


def snapshots_document(result: RunResult) -> list[dict]:
    return [
        {"iteration": s.iteration, "bin_edges": list(s.bin_edges), "counts": list(s.counts)}
        for s in result.snapshots
    ]


def write_snapshots(result: RunResult, destination) -> None:
    Path(destination).write_text(json.dumps(snapshots_document(result)) + "\n", encoding="utf-8")


def final_summary(result: RunResult) -> dict:
    last = result.frames[-1]
    return {
        "iteration": last.iteration,
        "gini": last.gini,
        "share_bottom50": last.share_bottom50,
        "share_top10": last.share_top10,
        "share_top1": last.share_top1,
        "total_wealth": last.total_wealth,
    }


def write_run(result: RunResult, out_dir, stem: str = "") -> dict[str, Path]:
    """Write ``timeseries.csv``, ``snapshots.json`` and ``run.json`` into ``out_dir``.

    A non-empty ``stem`` is prefixed to each file name.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    prefix = f"{stem}." if stem else ""
    paths = {
        "timeseries": out / f"{prefix}timeseries.csv",
        "snapshots": out / f"{prefix}snapshots.json",
        "run": out / f"{prefix}run.json",
    }
    write_timeseries(result, paths["timeseries"])
    write_snapshots(result, paths["snapshots"])
    meta = {
        "scenario": scenario_to_document(result.scenario),
        "metadata": result.metadata,
        "final": final_summary(result),
    }
    paths["run"].write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    return paths
