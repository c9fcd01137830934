"""Command-line runner for scenario files and the built-in suite.

Exit codes: 0 when every executed check passes, 1 when any fails, 2 for
usage or parse errors. The default seed can come from DWEAK_SEED; an
explicit --seed always wins.
"""
from __future__ import annotations

import os
import sys

import click

from .catalog import reproduce_catalog
from .checks import check_names, describe_check
from .errors import ScenarioParseError
from .scenario import Report, run_scenario


def _seed_from_env(seed: int | None) -> int | None:
    if seed is not None:
        return seed
    raw = os.environ.get("DWEAK_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise click.UsageError(f"DWEAK_SEED must be an integer, got {raw!r}")


def _emit(report: Report, as_json: bool) -> None:
    if as_json:
        click.echo(report.to_json(), nl=False)
    else:
        for line in report.human_lines():
            click.echo(line)
    sys.exit(0 if report.passed else 1)


@click.group()
def main() -> None:
    """Convergence experiments over metric-space scenarios."""


@main.command()
@click.argument("scenario", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, default=None, help="Override the scenario seed.")
@click.option("--horizon", type=int, default=None, help="Override the window length.")
@click.option("--tol", type=float, default=None, help="Override the tolerance.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
@click.option("--filter", "filter_id", default=None, help="Run a single check id.")
def run(scenario: str, seed: int | None, horizon: int | None, tol: float | None,
        as_json: bool, filter_id: str | None) -> None:
    """Execute the checks declared in a scenario file."""
    try:
        report = run_scenario(scenario, seed=_seed_from_env(seed), horizon=horizon,
                              tol=tol, filter_id=filter_id)
    except ScenarioParseError as e:
        click.echo(f"scenario error: {e}", err=True)
        sys.exit(2)
    _emit(report, as_json)


@main.command()
@click.option("--seed", type=int, default=None, help="Override every scenario seed.")
@click.option("--horizon", type=int, default=None, help="Override window lengths.")
@click.option("--tol", type=float, default=None, help="Override tolerances.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
@click.option("--filter", "filter_id", default=None, help="Run a single check id.")
def reproduce(seed: int | None, horizon: int | None, tol: float | None,
              as_json: bool, filter_id: str | None) -> None:
    """Run the built-in catalog of documented results."""
    report = reproduce_catalog(filter_id=filter_id, seed=_seed_from_env(seed),
                               horizon=horizon, tol=tol)
    _emit(report, as_json)


@main.command("list-checks")
def list_checks() -> None:
    """List the check names a scenario may request."""
    for name in check_names():
        click.echo(f"{name:<26}  {describe_check(name)}")


if __name__ == "__main__":
    main()
