"""Cached seed ensembles of the bundled presets, shared by slow tests."""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from wealthsim.engine import run
from wealthsim.scenario_io.presets import load_preset

ENSEMBLE_SEEDS = tuple(range(1, 21))

# one "PASS"/"FAIL" line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@dataclass
class Ensemble:
    iterations: np.ndarray  # (frames,)
    gini: np.ndarray  # (seeds, frames)
    bottom50: np.ndarray
    top10: np.ndarray
    top1: np.ndarray
    max_share: np.ndarray
    min_wealth: np.ndarray  # (seeds,) smallest entry seen at any frame or tax event
    conservation: np.ndarray  # (seeds,) worst relative total drift over frames

    def at(self, t: int) -> int:
        return int(np.flatnonzero(self.iterations == t)[0])

    def window(self, lo: int, hi: int) -> np.ndarray:
        return (self.iterations >= lo) & (self.iterations <= hi)


def _run_one(name: str, seed: int):
    scenario = load_preset(name, seed=seed)
    lowest = [np.inf]
    max_share = []

    def observer(event, t, wealth):
        lowest[0] = min(lowest[0], float(wealth.min()))
        if event == "metrics":
            max_share.append(float(wealth.max() / wealth.sum()))

    result = run(scenario, observer=observer)
    total0 = scenario.n_agents * scenario.initial_wealth
    drift = max(abs(f.total_wealth - total0) / total0 for f in result.frames)
    return result, lowest[0], np.array(max_share), drift


@functools.lru_cache(maxsize=None)
def ensemble(name: str, n_seeds: int = len(ENSEMBLE_SEEDS)) -> Ensemble:
    runs = [_run_one(name, seed) for seed in ENSEMBLE_SEEDS[:n_seeds]]
    frames = [r[0].frames for r in runs]
    col = lambda attr: np.array([[getattr(f, attr) for f in fr] for fr in frames])
    return Ensemble(
        iterations=np.array([f.iteration for f in frames[0]]),
        gini=col("gini"),
        bottom50=col("share_bottom50"),
        top10=col("share_top10"),
        top1=col("share_top1"),
        max_share=np.array([r[2] for r in runs]),
        min_wealth=np.array([r[1] for r in runs]),
        conservation=np.array([r[3] for r in runs]),
    )


# presets whose 20-seed ensembles the acceptance criteria need anyway
FULL_ENSEMBLE_PRESETS = {
    "baseline", "kinetic", "flat_income_05", "flat_income_30", "flat_income_30_losers",
    "flat_income_60", "progressive_75", "wealth_01", "wealth_05", "wealth_30",
}


def small_ensemble(name: str) -> Ensemble:
    """Five seeds, sliced from the full ensemble where that one is needed anyway."""
    if name not in FULL_ENSEMBLE_PRESETS:
        return ensemble(name, 5)
    full = ensemble(name)
    return Ensemble(
        iterations=full.iterations,
        **{
            k: getattr(full, k)[:5]
            for k in ("gini", "bottom50", "top10", "top1", "max_share", "min_wealth", "conservation")
        },
    )
