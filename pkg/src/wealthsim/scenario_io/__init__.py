"""Scenario files, result serialisation and parameter sweeps."""

from wealthsim.scenario_io.output import read_timeseries, write_run, write_snapshots, write_timeseries
from wealthsim.scenario_io.scenario import (
    load_scenario,
    parse_scenario,
    scenario_to_document,
)
from wealthsim.scenario_io.sweep import SweepSpec, load_sweep, parse_sweep, run_sweep

__all__ = [
    "SweepSpec",
    "load_scenario",
    "load_sweep",
    "parse_scenario",
    "parse_sweep",
    "read_timeseries",
    "run_sweep",
    "scenario_to_document",
    "write_run",
    "write_snapshots",
    "write_timeseries",
]
