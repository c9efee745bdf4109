"""Bundled scenario files, one per experiment in the tax study."""

from __future__ import annotations

from dataclasses import replace
from importlib import resources

from wealthsim.engine import Scenario
from wealthsim.scenario_io.scenario import parse_scenario

_PACKAGE = "wealthsim.presets"


def preset_names() -> list[str]:
    return sorted(
        entry.name[: -len(".json")]
        for entry in resources.files(_PACKAGE).iterdir()
        if entry.name.endswith(".json")
    )


def preset_text(name: str) -> str:
    if name not in preset_names():
        raise KeyError(name)
    return resources.files(_PACKAGE).joinpath(f"{name}.json").read_text(encoding="utf-8")


def load_preset(name: str, seed: int | None = None) -> Scenario:
    scenario = parse_scenario(preset_text(name))
    if seed is not None:
        scenario = replace(scenario, seed=seed)
    return scenario
