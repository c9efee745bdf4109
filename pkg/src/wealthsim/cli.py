"""Command-line interface.

Exit codes: 0 success, 3 configuration error, 4 I/O error, 5 internal error
(click reports usage errors with 2).  The default output directory is
``./wealthsim-out`` unless ``WEALTHSIM_OUT`` is set.
"""

from __future__ import annotations

import functools
import os
import sys
from dataclasses import replace
from pathlib import Path

import click

from wealthsim.engine import MAX_SEED, run as run_scenario
from wealthsim.errors import ConfigError
from wealthsim.scenario_io.output import final_summary, write_run
from wealthsim.scenario_io.presets import preset_names, preset_text
from wealthsim.scenario_io.scenario import load_scenario, parse_scenario
from wealthsim.scenario_io.sweep import load_sweep, run_sweep

EXIT_CONFIG = 3
EXIT_IO = 4
EXIT_INTERNAL = 5

OUT_ENV = "WEALTHSIM_OUT"


def default_out() -> str:
    return os.environ.get(OUT_ENV, "wealthsim-out")


def _guarded(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ConfigError as exc:
            click.echo(f"config error ({exc.category}): {exc}", err=True)
            sys.exit(EXIT_CONFIG)
        except OSError as exc:
            click.echo(f"I/O error: {exc}", err=True)
            sys.exit(EXIT_IO)
        except click.exceptions.Exit:
            raise
        except Exception as exc:
            click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(EXIT_INTERNAL)

    return wrapper


def _resolve_scenario(source: str):
    """A path to a scenario file, or the name of a bundled preset."""
    path = Path(source)
    if path.exists():
        return load_scenario(path)
    if source in preset_names():
        return parse_scenario(preset_text(source))
    raise FileNotFoundError(f"no scenario file or preset named {source!r}")


@click.group()
def main():
    """Pairwise wealth-exchange simulator with income and wealth taxes."""


@main.command("run")
@click.argument("scenario_file")
@click.option("--seed", type=click.IntRange(0, MAX_SEED), default=None, help="Override the scenario seed.")
@click.option("--out", "out_dir", default=None, help=f"Output directory [default: ${OUT_ENV} or ./wealthsim-out].")
@_guarded
def run_cmd(scenario_file, seed, out_dir):
    """Run one scenario (file path or preset name)."""
    scenario = _resolve_scenario(scenario_file)
    if seed is not None:
        scenario = replace(scenario, seed=seed)
    result = run_scenario(scenario)
    paths = write_run(result, out_dir or default_out())
    final = final_summary(result)
    click.echo(
        f"t={final['iteration']} gini={final['gini']:.4f} bottom50={final['share_bottom50']:.4f} "
        f"top10={final['share_top10']:.4f} top1={final['share_top1']:.4f}"
    )
    for kind, path in paths.items():
        click.echo(f"{kind}: {path}")


@main.command("sweep")
@click.argument("sweep_file", type=click.Path(dir_okay=False))
@click.option("--parallel", type=click.IntRange(1), default=1, show_default=True)
@click.option("--out", "out_dir", default=None, help=f"Output directory [default: ${OUT_ENV} or ./wealthsim-out].")
@_guarded
def sweep_cmd(sweep_file, parallel, out_dir):
    """Run every axis combination x seed of a sweep file."""
    spec = load_sweep(sweep_file)
    out = Path(out_dir or default_out())
    rows = run_sweep(spec, parallelism=parallel, out_dir=out)
    failed = sum(1 for r in rows if r["status"] != "ok")
    click.echo(f"{len(rows)} runs, {failed} failed; summary: {out / 'summary.csv'}")


@main.group("presets")
def presets_group():
    """Bundled scenarios for each experiment."""


@presets_group.command("list")
def presets_list():
    for name in preset_names():
        click.echo(name)


@presets_group.command("show")
@click.argument("name")
@_guarded
def presets_show(name):
    """Print a preset's scenario document."""
    if name not in preset_names():
        raise ConfigError(f"unknown preset {name!r}")
    click.echo(preset_text(name), nl=False)


@main.command("validate")
@click.argument("scenario_file")
@_guarded
def validate_cmd(scenario_file):
    """Check a scenario file without running it."""
    _resolve_scenario(scenario_file)
    click.echo("ok")


if __name__ == "__main__":
    main()
