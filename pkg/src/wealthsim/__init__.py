"""Monte Carlo simulator of pairwise wealth-exchange economies under taxation."""

from wealthsim.engine import RunResult, Scenario, run
from wealthsim.exchange import ExchangeModel
from wealthsim.metrics import decile_histogram, gini, quantile_shares
from wealthsim.population import Population, new_population
from wealthsim.taxation import ProgressiveSchedule, RedistributionPolicy, TaxKind, TaxRegime

__version__ = "0.1.0"

__all__ = [
    "ExchangeModel",
    "Population",
    "ProgressiveSchedule",
    "RedistributionPolicy",
    "RunResult",
    "Scenario",
    "TaxKind",
    "TaxRegime",
    "decile_histogram",
    "gini",
    "new_population",
    "quantile_shares",
    "run",
]
