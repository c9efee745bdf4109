"""Single-run orchestration: the encounter loop, tax schedule and metric sampling.

One iteration is one encounter between a random pair of agents.  At a tax
boundary the order of work is: that iteration's exchange, tax assessment,
redistribution, new period baseline, then metric sampling.
"""

from __future__ import annotations

import importlib.metadata
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from wealthsim.errors import ConfigError, OutOfRangeError, WealthSimError
from wealthsim.exchange import (
    STEP_KERNELS,
    ExchangeDraw,
    ExchangeModel,
    ExchangeOutcome,
    apply_exchanges,
    draw_exchange,
    draw_exchanges,
)
from wealthsim.metrics import HistogramSnapshot, MetricsFrame, decile_histogram, measure
from wealthsim.population import (
    DEFAULT_INITIAL_WEALTH,
    Population,
    new_population,
    sample_pair,
    sample_pairs,
    total_wealth,
)
from wealthsim.taxation import (
    RedistributionPolicy,
    TaxKind,
    TaxLedger,
    TaxRegime,
    assess_flat_income_tax,
    assess_progressive_income_tax,
    assess_wealth_tax,
    record_period_start,
    redistribute,
)

DEFAULT_SNAPSHOTS = (1_000, 10_000, 100_000)
MAX_SEED = 2**64 - 1

# observer(event, iteration, wealth); events: "exchange", "tax", "redistribute", "metrics"
Observer = Callable[[str, int, np.ndarray], None]


@dataclass(frozen=True)
class Scenario:
    n_agents: int = 1000
    initial_wealth: float = DEFAULT_INITIAL_WEALTH
    exchange_model: ExchangeModel = ExchangeModel.BASELINE
    tax_regime: TaxRegime = field(default_factory=TaxRegime)
    redistribution: RedistributionPolicy = RedistributionPolicy.TO_ALL
    horizon: int = 100_000
    metrics_every: int = 100
    # None selects the default checkpoints that fall inside the horizon
    snapshot_at: tuple[int, ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.snapshot_at is None:
            snaps = tuple(t for t in DEFAULT_SNAPSHOTS if t <= self.horizon)
        else:
            snaps = tuple(sorted(set(int(t) for t in self.snapshot_at)))
        object.__setattr__(self, "snapshot_at", snaps)
        self.validate()

    def validate(self) -> None:
        if self.n_agents < 2:
            raise OutOfRangeError(f"need at least 2 agents, got {self.n_agents}", key="agents")
        if not (self.initial_wealth >= 0 and np.isfinite(self.initial_wealth)):
            raise OutOfRangeError(f"must be finite and >= 0, got {self.initial_wealth}", key="initial_wealth")
        if self.horizon < 0:
            raise OutOfRangeError(f"must be >= 0, got {self.horizon}", key="horizon")
        if self.metrics_every < 1:
            raise OutOfRangeError(f"must be >= 1, got {self.metrics_every}", key="metrics_every")
        for t in self.snapshot_at:
            if not 0 <= t <= self.horizon:
                raise OutOfRangeError(f"snapshot {t} outside [0, {self.horizon}]", key="snapshots")
        if not 0 <= self.seed <= MAX_SEED:
            raise OutOfRangeError(f"must be a 64-bit unsigned integer, got {self.seed}", key="seed")


@dataclass
class RunResult:
    scenario: Scenario
    frames: list[MetricsFrame]
    snapshots: list[HistogramSnapshot]
    final_wealth: np.ndarray
    metadata: dict


class EncounterStream:
    """Buffered source of encounter draws.

    Draws come from the generator in fixed-size blocks, so the sequence of
    encounters depends only on the seed and the population size, never on
    how the run is cut into chunks by tax or sampling events.
    """

    block_size = 8192

    def __init__(self, rng: np.random.Generator, n: int):
        self.rng = rng
        self.n = n
        self._pos = self.block_size
        self._block = None

    def _refill(self):
        first, second = sample_pairs(self.rng, self.n, self.block_size)
        p, receiver_first = draw_exchanges(self.rng, self.block_size)
        self._block = (first, second, p, receiver_first)
        self._pos = 0

    def advance(self, wealth: np.ndarray, count: int, kinetic: bool) -> int:
        """Run ``count`` encounters on ``wealth``; returns rejected trades."""
        rejected = 0
        while count > 0:
            if self._pos == self.block_size:
                self._refill()
            stop = min(self._pos + count, self.block_size)
            sl = slice(self._pos, stop)
            first, second, p, receiver_first = self._block
            rejected += apply_exchanges(wealth, first[sl], second[sl], p[sl], receiver_first[sl], kinetic)
            count -= stop - self._pos
            self._pos = stop
        return rejected


def step(
    pop: Population,
    model: ExchangeModel,
    rng: np.random.Generator,
    draw: ExchangeDraw | None = None,
) -> ExchangeOutcome:
    """One encounter: pick a pair, draw the trade, apply the exchange rule."""
    pair = sample_pair(rng, pop.n_agents)
    if draw is None:
        draw = draw_exchange(rng)
    return STEP_KERNELS[model](pop, pair, draw)


def assess(pop: Population, regime: TaxRegime, base: np.ndarray) -> TaxLedger:
    if regime.kind is TaxKind.FLAT_INCOME:
        ledger = assess_flat_income_tax(pop, base, regime.rate)
    elif regime.kind is TaxKind.PROGRESSIVE_INCOME:
        ledger = assess_progressive_income_tax(pop, base, regime.schedule)
    elif regime.kind is TaxKind.FLAT_WEALTH:
        ledger = assess_wealth_tax(pop, regime.rate)
    else:
        raise WealthSimError(f"no tax event for regime {regime.kind.value}")
    return ledger


def _generator_info() -> dict:
    return {
        "bit_generator": "numpy.random.PCG64",
        "numpy_version": np.__version__,
        "wealthsim_version": _package_version(),
    }


def _package_version() -> str:
    try:
        return importlib.metadata.version("artifact")
    except importlib.metadata.PackageNotFoundError:
        return "unknown"


def run(scenario: Scenario, observer: Observer | None = None) -> RunResult:
    """Simulate ``scenario`` for ``scenario.horizon`` encounters.

    Identical scenarios (seed included) give bit-identical results.
    """
    if not isinstance(scenario, Scenario):
        raise ConfigError(f"expected a Scenario, got {type(scenario).__name__}")
    scenario.validate()

    rng = np.random.Generator(np.random.PCG64(scenario.seed))
    pop = new_population(scenario.n_agents, scenario.initial_wealth)
    stream = EncounterStream(rng, pop.n_agents)
    kinetic = scenario.exchange_model is ExchangeModel.KINETIC
    regime = scenario.tax_regime
    tax_period = regime.period
    base = record_period_start(pop) if tax_period else None
    checkpoints = set(scenario.snapshot_at)
    notify = observer or (lambda event, t, w: None)

    frames: list[MetricsFrame] = []
    snapshots: list[HistogramSnapshot] = []
    collected = 0.0
    rejected = 0

    def sample(t: int) -> None:
        frames.append(measure(pop.wealth, t, total_wealth(pop)))
        if t in checkpoints:
            snapshots.append(decile_histogram(pop.wealth, t))
        notify("metrics", t, pop.wealth)

    pending = sorted(checkpoints)
    sample(0)
    t = 0
    while t < scenario.horizon:
        nxt = min(scenario.horizon, (t // scenario.metrics_every + 1) * scenario.metrics_every)
        if tax_period:
            nxt = min(nxt, (t // tax_period + 1) * tax_period)
        while pending and pending[0] <= t:
            pending.pop(0)
        if pending:
            nxt = min(nxt, pending[0])

        rejected += stream.advance(pop.wealth, nxt - t, kinetic)
        t = nxt
        notify("exchange", t, pop.wealth)

        if tax_period and t % tax_period == 0:
            ledger = assess(pop, regime, base)
            collected += ledger.total
            notify("tax", t, pop.wealth)
            redistribute(pop, ledger, scenario.redistribution, base)
            notify("redistribute", t, pop.wealth)
            base = record_period_start(pop)

        if t % scenario.metrics_every == 0 or t in checkpoints or t == scenario.horizon:
            sample(t)

    metadata = _generator_info()
    metadata.update(seed=scenario.seed, rejected_trades=rejected, tax_collected=collected)
    return RunResult(
        scenario=scenario,
        frames=frames,
        snapshots=snapshots,
        final_wealth=pop.wealth.copy(),
        metadata=metadata,
    )
