"""JSON scenario documents.

A document is a JSON object; every key is optional and missing keys take
the defaults below::

    {
      "agents": 1000,
      "initial_wealth": 1000.0,
      "model": "baseline",                  # or "kinetic"
      "tax": {"kind": "none"},              # flat_income / flat_wealth need "rate",
                                            # progressive_income needs "schedule"
      "redistribution": "all",              # "losers", "bottom_half"
      "income_period": 10,
      "wealth_period": 100,                 # defaults to 10 x income_period
      "horizon": 100000,
      "metrics_every": 100,
      "snapshots": [1000, 10000, 100000],   # defaults clipped to the horizon
      "seed": 0
    }
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from wealthsim.engine import MAX_SEED, Scenario
from wealthsim.errors import (
    ConfigError,
    MissingKeyError,
    OutOfRangeError,
    ScenarioSyntaxError,
    UnknownKeyError,
)
from wealthsim.exchange import ExchangeModel
from wealthsim.taxation import (
    DEFAULT_INCOME_PERIOD,
    WEALTH_PERIOD_FACTOR,
    ProgressiveSchedule,
    RedistributionPolicy,
    TaxKind,
    TaxRegime,
)

SCENARIO_KEYS = {
    "agents",
    "initial_wealth",
    "model",
    "tax",
    "redistribution",
    "income_period",
    "wealth_period",
    "horizon",
    "metrics_every",
    "snapshots",
    "seed",
}
SCHEDULE_KEYS = ("r_min", "r_max", "y_free", "y_max")
TAX_KEYS = {
    TaxKind.NONE: {"kind"},
    TaxKind.FLAT_INCOME: {"kind", "rate"},
    TaxKind.FLAT_WEALTH: {"kind", "rate"},
    TaxKind.PROGRESSIVE_INCOME: {"kind", "schedule"},
}


def decode_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioSyntaxError(exc.msg, exc.lineno, exc.colno) from None


def _reject_unknown(doc: dict, allowed, prefix: str = "") -> None:
    for key in doc:
        if key not in allowed:
            raise UnknownKeyError("unknown key", key=prefix + str(key))


def _integer(value, key: str, minimum: int, maximum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", key=key)
    if value < minimum or (maximum is not None and value > maximum):
        bound = f"[{minimum}, {maximum}]" if maximum is not None else f">= {minimum}"
        raise OutOfRangeError(f"{value} not in {bound}", key=key)
    return value


def _number(value, key: str, lo: float = 0.0, hi: float = math.inf) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", key=key)
    value = float(value)
    if not math.isfinite(value) or not lo <= value <= hi:
        raise OutOfRangeError(f"{value} not in [{lo}, {hi}]", key=key)
    return value


def _choice(value, key: str, enum_type):
    try:
        return enum_type(value)
    except ValueError:
        options = ", ".join(repr(m.value) for m in enum_type)
        raise OutOfRangeError(f"{value!r} is not one of {options}", key=key) from None


def _parse_schedule(doc, key: str) -> ProgressiveSchedule:
    if not isinstance(doc, dict):
        raise ConfigError("expected an object", key=key)
    _reject_unknown(doc, SCHEDULE_KEYS, key + ".")
    for name in SCHEDULE_KEYS:
        if name not in doc:
            raise MissingKeyError("required", key=f"{key}.{name}")
    r_min = _number(doc["r_min"], f"{key}.r_min", 0.0, 1.0)
    r_max = _number(doc["r_max"], f"{key}.r_max", r_min, 1.0)
    y_free = _number(doc["y_free"], f"{key}.y_free")
    y_max = _number(doc["y_max"], f"{key}.y_max")
    if y_max <= y_free:
        raise OutOfRangeError(f"must exceed y_free ({y_free}), got {y_max}", key=f"{key}.y_max")
    return ProgressiveSchedule(r_min, r_max, y_free, y_max)


def _parse_tax(doc, income_period: int, wealth_period: int) -> TaxRegime:
    if not isinstance(doc, dict):
        raise ConfigError("expected an object", key="tax")
    if "kind" not in doc:
        raise MissingKeyError("required", key="tax.kind")
    kind = _choice(doc["kind"], "tax.kind", TaxKind)
    _reject_unknown(doc, TAX_KEYS[kind], "tax.")
    rate = 0.0
    schedule = None
    if kind in (TaxKind.FLAT_INCOME, TaxKind.FLAT_WEALTH):
        if "rate" not in doc:
            raise MissingKeyError("required", key="tax.rate")
        rate = _number(doc["rate"], "tax.rate", 0.0, 1.0)
    elif kind is TaxKind.PROGRESSIVE_INCOME:
        if "schedule" not in doc:
            raise MissingKeyError("required", key="tax.schedule")
        schedule = _parse_schedule(doc["schedule"], "tax.schedule")
    return TaxRegime(kind, rate, schedule, income_period, wealth_period)


def parse_scenario(document) -> Scenario:
    """Build a validated :class:`Scenario` from JSON text or a decoded object.

    Raises a :class:`~wealthsim.errors.ConfigError` subclass naming the
    offending key: ``ScenarioSyntaxError`` for malformed JSON,
    ``UnknownKeyError``, ``MissingKeyError`` or ``OutOfRangeError``.
    """
    doc = decode_json(document) if isinstance(document, (str, bytes)) else document
    if not isinstance(doc, dict):
        raise ConfigError("scenario must be a JSON object")
    _reject_unknown(doc, SCENARIO_KEYS)

    horizon = _integer(doc.get("horizon", 100_000), "horizon", 0)
    income_period = _integer(doc.get("income_period", DEFAULT_INCOME_PERIOD), "income_period", 1)
    wealth_period = _integer(
        doc.get("wealth_period", WEALTH_PERIOD_FACTOR * income_period), "wealth_period", 1
    )
    snapshots = doc.get("snapshots")
    if snapshots is not None:
        if not isinstance(snapshots, list):
            raise ConfigError("expected a list of iterations", key="snapshots")
        snapshots = tuple(_integer(t, "snapshots", 0, horizon) for t in snapshots)

    return Scenario(
        n_agents=_integer(doc.get("agents", 1000), "agents", 2),
        initial_wealth=_number(doc.get("initial_wealth", 1000.0), "initial_wealth"),
        exchange_model=_choice(doc.get("model", "baseline"), "model", ExchangeModel),
        tax_regime=_parse_tax(doc.get("tax", {"kind": "none"}), income_period, wealth_period),
        redistribution=_choice(doc.get("redistribution", "all"), "redistribution", RedistributionPolicy),
        horizon=horizon,
        metrics_every=_integer(doc.get("metrics_every", 100), "metrics_every", 1),
        snapshot_at=snapshots,
        seed=_integer(doc.get("seed", 0), "seed", 0, MAX_SEED),
    )


def scenario_to_document(scenario: Scenario) -> dict:
    """Fully resolved document; ``parse_scenario`` inverts it exactly."""
    regime = scenario.tax_regime
    tax: dict[str, Any] = {"kind": regime.kind.value}
    if regime.kind in (TaxKind.FLAT_INCOME, TaxKind.FLAT_WEALTH):
        tax["rate"] = regime.rate
    elif regime.kind is TaxKind.PROGRESSIVE_INCOME:
        s = regime.schedule
        tax["schedule"] = {"r_min": s.r_min, "r_max": s.r_max, "y_free": s.y_free, "y_max": s.y_max}
    return {
        "agents": scenario.n_agents,
        "initial_wealth": scenario.initial_wealth,
        "model": scenario.exchange_model.value,
        "tax": tax,
        "redistribution": scenario.redistribution.value,
        "income_period": regime.income_period,
        "wealth_period": regime.wealth_period,
        "horizon": scenario.horizon,
        "metrics_every": scenario.metrics_every,
        "snapshots": list(scenario.snapshot_at),
        "seed": scenario.seed,
    }


def dump_scenario(scenario: Scenario) -> str:
    return json.dumps(scenario_to_document(scenario), indent=2) + "\n"


def load_scenario(path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))
