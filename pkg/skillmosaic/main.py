"""Provides a CLI using Typer as an entry point."""

import os
import re
from logging import getLogger
from pathlib import Path
from typing import List, Optional

import typer

import skillmosaic  # noqa - Gets the skillmosaic logger config
from skillmosaic.bench.runner import CLOCKS, PLANNERS, run_planner
from skillmosaic.bench.scenarios import FAMILIES, make_scenario
from skillmosaic.config.planner_config import PlannerConfig
from skillmosaic.exceptions import (ConfigGroupValidationError,
                                    ConfigItemValidationError, InputError,
                                    ParameterError, SnapshotParseError)
from skillmosaic.mosaic.snapshot import write_snapshot
from skillmosaic.utils.file_utils import make_dirs, write_json
from skillmosaic.world.scenario import Scenario, load_scenario, save_scenario

_LOGGER = getLogger(__name__)

BAD_INPUT = (InputError, ParameterError, ConfigGroupValidationError,
             ConfigItemValidationError, SnapshotParseError, FileNotFoundError)
CLOCK_HELP = (f'One of {CLOCKS}. wall measures real time; work charges 1 ms '
              'per rollout and makes suites byte-identical.')

app = typer.Typer()


def _guard(func, *args, **kwargs):
    """Run a command body, mapping bad input to exit code 2 and crashes to
    exit code 1."""
    try:
        return func(*args, **kwargs)
    except typer.Exit:
        raise
    except BAD_INPUT as e:
        _LOGGER.error(f'Bad input: {e}')
        raise typer.Exit(code=2)
    except Exception as e:  # noqa
        _LOGGER.error(f'Crashed: {e!r}', exc_info=True)
        raise typer.Exit(code=1)


def parse_seeds(text: str) -> List[int]:
    """``A..B`` (inclusive), a comma separated list, or a single seed."""
    try:
        if '..' in text:
            first, last = (int(v) for v in text.split('..', 1))
            seeds = list(range(first, last + 1))
        else:
            seeds = [int(v) for v in text.split(',') if v.strip()]
    except ValueError:
        seeds = []
    if not seeds or min(seeds) < 0:
        msg = f"Invalid seed range '{text}', expected e.g. '0..49'."
        _LOGGER.error(msg)
        raise InputError(msg)
    return seeds


def _names(text: str, allowed, kind: str) -> List[str]:
    names = [n.strip() for n in text.split(',') if n.strip()]
    unknown = [n for n in names if n not in allowed]
    if not names or unknown:
        msg = f'Unknown {kind} {unknown or text!r}, expected from {allowed}.'
        _LOGGER.error(msg)
        raise InputError(msg)
    return names


def resolve_scenario(spec: str, seed: int) -> Scenario:
    """A scenario file path, a generated scenario name such as
    ``clutter-7``, or a family name generated with ``seed``."""
    if os.path.isfile(spec):
        return load_scenario(spec)
    family, _, suffix = spec.rpartition('-')
    if family in FAMILIES and suffix.isdigit():
        return make_scenario(family, int(suffix))
    if spec in FAMILIES:
        return make_scenario(spec, seed)
    msg = f"'{spec}' is neither a scenario file nor one of {FAMILIES}."
    _LOGGER.error(msg)
    raise InputError(msg)


def _config(config_path: Optional[Path], max_iters: Optional[int],
            time_budget: Optional[float],
            oracle_alpha: Optional[float]) -> PlannerConfig:
    config = PlannerConfig.create_from_yaml(config_path)
    overrides: dict = {}
    if max_iters is not None:
        overrides.setdefault('budget', {})['max_iterations'] = max_iters
    if time_budget is not None:
        overrides.setdefault('budget', {})['time_limit'] = float(time_budget)
    if oracle_alpha is not None:
        overrides['oracle'] = {'alpha': float(oracle_alpha)}
    config.set_from_dict(overrides)
    config.raise_if_invalid()
    return config


@app.command()
def plan(scenario: str = typer.Option(..., help='Scenario file, name or family.'),
         planner: str = typer.Option('mosaic', help=f'One of {PLANNERS}.'),
         seed: int = 0,
         max_iters: Optional[int] = None,
         time_budget: Optional[float] = None,
         oracle_alpha: Optional[float] = None,
         config: Optional[Path] = None,
         clock: str = typer.Option('wall', help=CLOCK_HELP),
         out: Path = Path('out')):
    """Run one planner on one scenario.

    Writes result.json and a snapshot of the scene, the planner's graph and
    the plan steps to ``out``. A planner that finds no plan still exits 0.
    """

    def body():
        planner_config = _config(config, max_iters, time_budget, oracle_alpha)
        problem = resolve_scenario(scenario, seed)
        result = run_planner(planner, problem, planner_config, seed, clock)
        make_dirs(out)
        record = result.to_dict()
        record['scenario'] = problem.name
        record['config_hash'] = planner_config.config_hash()
        write_json(out / 'result.json', record)
        if result.success:
            result.write_snapshot(out / 'snapshot.tsv', problem)
            print(f'{planner}: plan of {result.length} steps '
                  f'({", ".join(str(s) for s in result.skills)}), '
                  f'cost {result.total_cost:.4f}, '
                  f'{result.iterations} iterations.')
        else:
            write_snapshot(out / 'snapshot.tsv', problem, result.graph)
            print(f'{planner}: no plan ({result.reason}), '
                  f'{result.iterations} iterations.')

    _guard(body)


@app.command()
def suite(families: str = ','.join(FAMILIES),
          planners: str = ','.join(PLANNERS),
          seeds: str = '0..49',
          max_iters: Optional[int] = None,
          time_budget: Optional[float] = None,
          config: Optional[Path] = None,
          clock: str = typer.Option('wall', help=CLOCK_HELP),
          out: Path = Path('suite')):
    """Compare planners over scenario families and seeds.

    Cell worker threads come from the SKILLMOSAIC_WORKERS environment
    variable. Exits 1 when any run crashed.
    """
    from skillmosaic.bench.suite import run_suite

    def body():
        planner_config = _config(config, max_iters, time_budget, None)
        records, _ = run_suite(_names(families, FAMILIES, 'family'),
                               _names(planners, PLANNERS, 'planner'),
                               parse_seeds(seeds), out, planner_config, clock)
        crashed = [r for r in records if r.error]
        if crashed:
            _LOGGER.error(f'{len(crashed)} runs crashed.')
            raise typer.Exit(code=1)

    _guard(body)


@app.command(name='scenario')
def scenario_cmd(family: str, seed: int = 0, out: Optional[Path] = None):
    """Generate a benchmark scenario and write it as JSON."""

    def body():
        generated = make_scenario(family, seed)
        path = out if out is not None else Path(f'{generated.name}.json')
        save_scenario(generated, path)
        print(path)

    _guard(body)


@app.command()
def render(input: Path = typer.Option(..., help='Snapshot file.'),
           out: Path = Path('snapshot.svg')):
    """Render a graph or plan snapshot to SVG."""
    from skillmosaic.bench.render import export_svg

    _guard(export_svg, input, out)


@app.command()
def logs(last_n: int = 10):
    """Print the skillmosaic log file.

    :param last_n: The number of lines to print. Default value is 10.
    """
    if os.path.isfile(skillmosaic.LOG_FILE_PATH):
        with open(skillmosaic.LOG_FILE_PATH) as file:
            lines = file.readlines()
        for line in lines[-last_n:]:
            print(re.sub(r'\n*', '', line))


@app.command()
def version():
    """Get the installed skillmosaic version number."""

    print(skillmosaic.__version__)


if __name__ == '__main__':
    app()
