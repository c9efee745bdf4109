"""Pairwise exchange kernels.

Two rules are supported:

* ``BASELINE``: the amount moved is a random fraction of the *poorer* agent's
  wealth and flows to one randomly chosen member of the pair.
* ``KINETIC``: the amount is a random fraction of the pair's mean wealth.  A
  trade the payer cannot cover is rejected and leaves both agents untouched.

The scalar functions operate on a :class:`~wealthsim.population.Population`
one encounter at a time.  :func:`apply_exchanges` is the compiled block kernel
the engine uses; it performs the same floating point operations in the same
order, so both paths produce bit-identical wealth vectors.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numba import njit

from wealthsim.population import Population


class ExchangeModel(enum.Enum):
    BASELINE = "baseline"
    KINETIC = "kinetic"


@dataclass(frozen=True)
class ExchangeDraw:
    p: float
    receiver_first: bool  # True: the first agent of the pair gains money


@dataclass(frozen=True)
class ExchangeOutcome:
    delta_m: float
    applied: bool


def draw_exchange(rng: np.random.Generator) -> ExchangeDraw:
    p, receiver = draw_exchanges(rng, 1)
    return ExchangeDraw(float(p[0]), bool(receiver[0]))


def draw_exchanges(rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised draws: fractions uniform on [0, 1) and fair-coin receivers."""
    p = rng.random(size)
    receiver_first = rng.integers(0, 2, size=size, dtype=np.int8).astype(np.bool_)
    return p, receiver_first


def _transfer(pop: Population, i: int, j: int, draw: ExchangeDraw, delta: float) -> ExchangeOutcome:
    payer, receiver = (j, i) if draw.receiver_first else (i, j)
    w = pop.wealth
    if delta > w[payer]:
        return ExchangeOutcome(delta_m=delta, applied=False)
    w[payer] -= delta
    w[receiver] += delta
    return ExchangeOutcome(delta_m=delta, applied=True)


def baseline_step(pop: Population, pair: tuple[int, int], draw: ExchangeDraw) -> ExchangeOutcome:
    i, j = pair
    w = pop.wealth
    delta = draw.p * min(w[i], w[j])
    # delta never exceeds the payer's wealth here, so the trade always goes through
    return _transfer(pop, i, j, draw, delta)


def kinetic_step(pop: Population, pair: tuple[int, int], draw: ExchangeDraw) -> ExchangeOutcome:
    i, j = pair
    w = pop.wealth
    delta = draw.p * (w[i] + w[j]) * 0.5
    return _transfer(pop, i, j, draw, delta)


STEP_KERNELS = {
    ExchangeModel.BASELINE: baseline_step,
    ExchangeModel.KINETIC: kinetic_step,
}


@njit(cache=True)
def apply_exchanges(wealth, first, second, p, receiver_first, kinetic):
    """Apply a block of encounters in order; returns the number of rejected trades."""
    rejected = 0
    for k in range(first.shape[0]):
        i = first[k]
        j = second[k]
        if kinetic:
            delta = p[k] * (wealth[i] + wealth[j]) * 0.5
        else:
            delta = p[k] * min(wealth[i], wealth[j])
        if receiver_first[k]:
            payer = j
            receiver = i
        else:
            payer = i
            receiver = j
        if delta > wealth[payer]:
            rejected += 1
            continue
        wealth[payer] -= delta
        wealth[receiver] += delta
    return rejected
