"""Periodic tax assessment and redistribution of the collected pool.

Every tax event is split into an assessment, which deducts the tax and
returns a :class:`TaxLedger`, and :func:`redistribute`, which pays the pool
back out.  Together they conserve total wealth up to rounding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from wealthsim.errors import DomainError
from wealthsim.population import Population

DEFAULT_INCOME_PERIOD = 10
WEALTH_PERIOD_FACTOR = 10


class TaxKind(enum.Enum):
    NONE = "none"
    FLAT_INCOME = "flat_income"
    PROGRESSIVE_INCOME = "progressive_income"
    FLAT_WEALTH = "flat_wealth"


class RedistributionPolicy(enum.Enum):
    TO_ALL = "all"
    TO_LOSERS = "losers"
    TO_BOTTOM_HALF = "bottom_half"


@dataclass(frozen=True)
class ProgressiveSchedule:
    r_min: float
    r_max: float
    y_free: float
    y_max: float

    def __post_init__(self):
        if not 0.0 <= self.r_min <= self.r_max <= 1.0:
            raise DomainError(f"need 0 <= r_min <= r_max <= 1, got {self.r_min}, {self.r_max}")
        if not 0.0 <= self.y_free < self.y_max:
            raise DomainError(f"need 0 <= y_free < y_max, got {self.y_free}, {self.y_max}")


@dataclass(frozen=True)
class TaxRegime:
    kind: TaxKind = TaxKind.NONE
    rate: float = 0.0
    schedule: ProgressiveSchedule | None = None
    income_period: int = DEFAULT_INCOME_PERIOD
    wealth_period: int = DEFAULT_INCOME_PERIOD * WEALTH_PERIOD_FACTOR

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise DomainError(f"tax rate must lie in [0, 1], got {self.rate}")
        if self.kind is TaxKind.PROGRESSIVE_INCOME and self.schedule is None:
            raise DomainError("progressive income tax needs a schedule")
        if self.income_period < 1 or self.wealth_period < 1:
            raise DomainError("tax periods must be positive")

    @property
    def is_income_tax(self) -> bool:
        return self.kind in (TaxKind.FLAT_INCOME, TaxKind.PROGRESSIVE_INCOME)

    @property
    def period(self) -> int | None:
        """Iterations between tax events, or None when untaxed."""
        if self.is_income_tax:
            return self.income_period
        if self.kind is TaxKind.FLAT_WEALTH:
            return self.wealth_period
        return None


@dataclass
class TaxLedger:
    collected: np.ndarray

    @property
    def total(self) -> float:
        return float(self.collected.sum())


def record_period_start(pop: Population) -> np.ndarray:
    return pop.wealth.copy()


def _collect(pop: Population, collected: np.ndarray) -> TaxLedger:
    pop.wealth -= collected
    return TaxLedger(collected=collected)


def assess_flat_income_tax(pop: Population, base: np.ndarray, rate: float) -> TaxLedger:
    """Tax each agent's positive wealth gain since ``base`` at ``rate``.

    Agents whose wealth did not grow over the period pay nothing.
    """
    income = pop.wealth - base
    collected = np.where(income > 0.0, rate * income, 0.0)
    return _collect(pop, collected)


def progressive_rate(income, s: ProgressiveSchedule):
    """Tax rate for ``income``: zero up to ``y_free``, then a linear ramp
    from ``r_min`` reaching ``r_max`` at ``y_max`` and flat beyond it.

    Accepts scalars or arrays.
    """
    y = np.asarray(income, dtype=np.float64)
    ramp = s.r_min + (s.r_max - s.r_min) * (y - s.y_free) / (s.y_max - s.y_free)
    rate = np.where(y > s.y_free, np.clip(ramp, s.r_min, s.r_max), 0.0)
    return float(rate) if rate.ndim == 0 else rate


def assess_progressive_income_tax(pop: Population, base: np.ndarray, s: ProgressiveSchedule) -> TaxLedger:
    # the rate applies to income in excess of the tax-free allowance only
    income = pop.wealth - base
    excess = income - s.y_free
    collected = np.where(excess > 0.0, progressive_rate(income, s) * excess, 0.0)
    return _collect(pop, collected)


def assess_wealth_tax(pop: Population, rate: float) -> TaxLedger:
    return _collect(pop, rate * pop.wealth)


def redistribute(
    pop: Population,
    ledger: TaxLedger,
    policy: RedistributionPolicy,
    base: np.ndarray | None = None,
) -> None:
    """Pay the collected pool back out according to ``policy``.

    ``TO_LOSERS`` pays agents whose wealth fell over the period (judged before
    the tax was deducted) and needs ``base``; with no losers the pool goes to
    everyone.  ``TO_BOTTOM_HALF`` pays the ``N // 2`` poorest agents, ties
    broken by agent index.
    """
    w = pop.wealth
    pool = ledger.total
    n = w.size
    if policy is RedistributionPolicy.TO_LOSERS:
        if base is None:
            raise DomainError("redistribution to losers needs the period baseline")
        losers = (w + ledger.collected - base) < 0.0
        count = int(losers.sum())
        if count:
            w[losers] += pool / count
            return
    elif policy is RedistributionPolicy.TO_BOTTOM_HALF:
        poorest = np.argsort(w, kind="stable")[: n // 2]
        w[poorest] += pool / poorest.size
        return
    w += pool / n
