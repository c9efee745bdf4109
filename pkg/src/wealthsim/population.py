"""Per-agent wealth state and random pair selection."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from wealthsim.errors import DomainError, InvalidPopulationError

DEFAULT_INITIAL_WEALTH = 1000.0


@dataclass
class Population:
    """Wealth vector of a closed economy.

    ``wealth`` is mutated in place by exchange kernels and tax events;
    ``total_at_init`` is fixed at construction and used for conservation checks.
    """

    wealth: np.ndarray
    total_at_init: float

    @classmethod
    def from_wealth(cls, wealth) -> Population:
        w = np.array(wealth, dtype=np.float64)
        if w.ndim != 1 or w.size < 2:
            raise InvalidPopulationError(f"need at least 2 agents, got {w.size}")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise DomainError("wealth entries must be finite and non-negative")
        return cls(wealth=w, total_at_init=float(w.sum()))

    @property
    def n_agents(self) -> int:
        return int(self.wealth.size)

    def conservation_error(self) -> float:
        """Relative deviation of the current total from the initial total."""
        if self.total_at_init == 0.0:
            return abs(total_wealth(self))
        return abs(total_wealth(self) - self.total_at_init) / self.total_at_init


def new_population(n: int, initial_wealth: float = DEFAULT_INITIAL_WEALTH) -> Population:
    if n < 2:
        raise InvalidPopulationError(f"need at least 2 agents, got {n}")
    if not initial_wealth >= 0 or not np.isfinite(initial_wealth):
        raise DomainError(f"initial wealth must be finite and >= 0, got {initial_wealth}")
    return Population(wealth=np.full(n, float(initial_wealth)), total_at_init=n * float(initial_wealth))


def total_wealth(pop: Population) -> float:
    return math.fsum(pop.wealth.tolist())


def sample_pair(rng: np.random.Generator, n: int) -> tuple[int, int]:
    i, j = sample_pairs(rng, n, 1)
    return int(i[0]), int(j[0])


def sample_pairs(rng: np.random.Generator, n: int, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``size`` ordered pairs of distinct agents.

    ``i`` is uniform over all agents and ``j`` uniform over the other ``n - 1``,
    which makes every ordered pair equally likely.
    """
    if n < 2:
        raise InvalidPopulationError(f"need at least 2 agents, got {n}")
    i = rng.integers(0, n, size=size, dtype=np.int64)
    j = rng.integers(0, n - 1, size=size, dtype=np.int64)
    j += j >= i
    return i, j
