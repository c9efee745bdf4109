"""Cartesian parameter sweeps over scenario documents.

A sweep file looks like::

    {
      "base": {"model": "baseline", "tax": {"kind": "flat_income", "rate": 0.3}},
      "axes": {"tax.rate": [0.05, 0.30, 0.60]},
      "seeds": {"count": 10, "start": 0},      # or an explicit list [1, 2, 3]
      "cap": 10000
    }

Every axis combination runs once per seed.  Each run writes its own files
whose names encode the axis values and the seed, so outputs do not depend
on run order or on the degree of parallelism.
"""

from __future__ import annotations

import copy
import csv
import itertools
import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from wealthsim.engine import MAX_SEED, run
from wealthsim.errors import ConfigError, MissingKeyError, SweepCapError, UnknownKeyError
from wealthsim.scenario_io.output import final_summary, write_run
from wealthsim.scenario_io.scenario import decode_json, parse_scenario

DEFAULT_CAP = 10_000
SWEEP_KEYS = {"base", "axes", "seeds", "cap"}
SUMMARY_METRICS = ("iteration", "gini", "share_bottom50", "share_top10", "share_top1", "total_wealth")


@dataclass
class SweepSpec:
    base: dict = field(default_factory=dict)
    axes: dict[str, list] = field(default_factory=dict)
    seeds: list[int] = field(default_factory=lambda: [0])
    cap: int = DEFAULT_CAP

    def size(self) -> int:
        n = len(self.seeds)
        for values in self.axes.values():
            n *= len(values)
        return n

    def runs(self) -> list[tuple[str, dict, dict]]:
        """(run id, axis assignment, scenario document) for every run, in a fixed order."""
        keys = list(self.axes)
        out = []
        for combo in itertools.product(*(self.axes[k] for k in keys)):
            assignment = dict(zip(keys, combo))
            for seed in self.seeds:
                doc = copy.deepcopy(self.base)
                for path, value in assignment.items():
                    set_path(doc, path, value)
                doc["seed"] = seed
                out.append((run_id(assignment, seed), assignment, doc))
        return out


def set_path(doc: dict, path: str, value) -> None:
    parts = path.split(".")
    node = doc
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ConfigError("cannot descend into a non-object", key=path)
    node[parts[-1]] = value


def run_id(assignment: dict, seed: int) -> str:
    parts = [f"{k}={json.dumps(v, sort_keys=True)}" for k, v in assignment.items()]
    parts.append(f"seed={seed}")
    return re.sub(r"[^A-Za-z0-9._=-]+", "-", "__".join(parts))


def parse_sweep(document) -> SweepSpec:
    doc = decode_json(document) if isinstance(document, (str, bytes)) else document
    if not isinstance(doc, dict):
        raise ConfigError("sweep must be a JSON object")
    for key in doc:
        if key not in SWEEP_KEYS:
            raise UnknownKeyError("unknown key", key=key)
    base = doc.get("base", {})
    if not isinstance(base, dict):
        raise ConfigError("expected an object", key="base")
    axes = doc.get("axes", {})
    if not isinstance(axes, dict) or not all(isinstance(v, list) and v for v in axes.values()):
        raise ConfigError("expected an object of non-empty lists", key="axes")

    seeds = doc.get("seeds", [0])
    if isinstance(seeds, dict):
        if "count" not in seeds:
            raise MissingKeyError("required", key="seeds.count")
        extra = set(seeds) - {"count", "start"}
        if extra:
            raise UnknownKeyError("unknown key", key="seeds." + sorted(extra)[0])
        seeds = [seeds.get("start", 0) + k for k in range(seeds["count"])]
    if not isinstance(seeds, list) or not seeds:
        raise ConfigError("expected a non-empty list or {count, start}", key="seeds")
    for s in seeds:
        if isinstance(s, bool) or not isinstance(s, int) or not 0 <= s <= MAX_SEED:
            raise ConfigError(f"invalid seed {s!r}", key="seeds")

    cap = doc.get("cap", DEFAULT_CAP)
    if isinstance(cap, bool) or not isinstance(cap, int) or cap < 1:
        raise ConfigError("expected a positive integer", key="cap")
    return SweepSpec(base=base, axes=axes, seeds=seeds, cap=cap)


def load_sweep(path) -> SweepSpec:
    return parse_sweep(Path(path).read_text(encoding="utf-8"))


def _execute(rid: str, doc: dict, run_dir: str) -> dict:
    try:
        result = run(parse_scenario(doc))
        write_run(result, run_dir, stem=rid)
        return {"status": "ok", "error": "", **final_summary(result)}
    except Exception as exc:  # a failed run is reported, not fatal to the sweep
        return {"status": "error", "error": f"{type(exc).__name__}: {exc}"}


def run_sweep(spec: SweepSpec, parallelism: int = 1, out_dir=".") -> list[dict]:
    """Execute every run of ``spec`` and write ``summary.csv``.

    Per-run files go under ``out_dir/runs``.  Returns the summary rows.
    """
    if parallelism < 1:
        raise ConfigError("must be >= 1", key="parallel")
    if spec.size() > spec.cap:
        raise SweepCapError(f"{spec.size()} runs exceed the cap of {spec.cap}", key="cap")
    out = Path(out_dir)
    run_dir = out / "runs"
    run_dir.mkdir(parents=True, exist_ok=True)

    plan = spec.runs()
    if parallelism == 1:
        outcomes = [_execute(rid, doc, str(run_dir)) for rid, _, doc in plan]
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            futures = [pool.submit(_execute, rid, doc, str(run_dir)) for rid, _, doc in plan]
            outcomes = [f.result() for f in futures]

    axis_keys = list(spec.axes)
    rows = []
    for (rid, assignment, doc), outcome in zip(plan, outcomes):
        row = {"run_id": rid, **assignment, "seed": doc["seed"]}
        row.update({k: outcome.get(k, "") for k in ("status", "error", *SUMMARY_METRICS)})
        rows.append(row)

    columns = ["run_id", *axis_keys, "seed", "status", "error", *SUMMARY_METRICS]
    with open(out / "summary.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row[k]) for k in columns})
    return rows


def _cell(value):
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return value
