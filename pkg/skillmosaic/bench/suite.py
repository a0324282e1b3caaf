"""Multi-seed planner comparison.

A suite runs every (family, planner, seed) cell, writes one
:class:`RunRecord` per cell to ``runs.csv`` and ``runs.json`` and aggregates
them into ``summary.json``. Times are wall-clock by default; with
``clock="work"`` every output is a pure function of the arguments.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from logging import getLogger
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd
from tabulate import tabulate

from skillmosaic.bench.runner import run_planner
from skillmosaic.bench.scenarios import make_scenario
from skillmosaic.config.planner_config import PlannerConfig
from skillmosaic.exceptions import InputError
from skillmosaic.utils.file_utils import make_dirs, write_json
from skillmosaic.world.scenario import Scenario

_LOGGER = getLogger(__name__)

WORKERS_ENV = 'SKILLMOSAIC_WORKERS'
TIME_DECIMALS = 6
SUMMARY_HEADERS = [
    'Family', 'Planner', 'Runs', 'Success', 'Median time', 'IQR', 'Mean time',
    'Mean length'
]


@dataclass(frozen=True)
class RunRecord:
    """One planner run; ``length`` is set exactly when ``success`` is."""

    scenario: str
    family: str
    planner: str
    seed: int
    success: bool
    length: Optional[int]
    time: float
    iterations: int
    rollouts: int
    config_hash: str
    error: str = ''


COLUMNS = [f.name for f in fields(RunRecord)]


def env_workers() -> int:
    """Cell worker threads from ``SKILLMOSAIC_WORKERS``, 1 when unset."""
    raw = os.environ.get(WORKERS_ENV, '1')
    try:
        workers = int(raw)
    except ValueError:
        workers = 0
    if workers < 1:
        msg = f'{WORKERS_ENV} must be a positive integer, got {raw!r}.'
        _LOGGER.error(msg)
        raise InputError(msg)
    return workers


def run_cell(scenario: Scenario, family: str, planner: str, seed: int,
             config: PlannerConfig, clock: str = 'wall') -> RunRecord:
    """Run one cell; a crash becomes a record with ``error`` set."""
    config_hash = config.config_hash()
    try:
        result = run_planner(planner, scenario, config, seed, clock)
    except Exception as e:  # noqa
        _LOGGER.error(f'{planner} crashed on {scenario.name}: {e!r}',
                      exc_info=True)
        return RunRecord(scenario.name, family, planner, seed, False, None,
                         0.0, 0, 0, config_hash, repr(e))
    return RunRecord(
        scenario=scenario.name,
        family=family,
        planner=planner,
        seed=seed,
        success=result.success,
        length=result.length if result.success else None,
        time=round(result.wall_time, TIME_DECIMALS),
        iterations=result.iterations,
        rollouts=result.rollouts,
        config_hash=config_hash,
    )


def _clean(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def _quantiles(times: pd.Series) -> Dict[str, Optional[float]]:
    if times.empty:
        return dict.fromkeys(('median', 'q1', 'q3', 'iqr', 'mean'))
    q1, median, q3 = (float(times.quantile(q)) for q in (0.25, 0.5, 0.75))
    return {
        'median': median,
        'q1': q1,
        'q3': q3,
        'iqr': q3 - q1,
        'mean': float(times.mean()),
    }


def head_to_head(runs: pd.DataFrame,
                 column: str) -> Dict[str, Dict[str, Optional[float]]]:
    """Ratio-of-sums matrix ``[a][b] = sum(a) / sum(b)`` of ``column`` over
    the seeds both planners solved; ``None`` without common solutions."""
    solved = runs[runs['success']]
    planners = sorted(runs['planner'].unique())
    matrix: Dict[str, Dict[str, Optional[float]]] = {}
    for a in planners:
        row = {}
        seeds_a = set(solved[solved['planner'] == a]['seed'])
        for b in planners:
            common = seeds_a & set(solved[solved['planner'] == b]['seed'])
            if not common:
                row[b] = None
                continue
            total_a = float(solved[(solved['planner'] == a)
                                   & solved['seed'].isin(common)][column].sum())
            total_b = float(solved[(solved['planner'] == b)
                                   & solved['seed'].isin(common)][column].sum())
            if a == b or total_a == total_b:
                row[b] = 1.0
            elif total_b == 0.0:
                row[b] = None
            else:
                row[b] = total_a / total_b
        matrix[a] = row
    return matrix


def summarise(runs: pd.DataFrame) -> dict:
    """Aggregate run records into the suite summary.

    :param runs: One row per :class:`RunRecord`.
    :return: Per-(family, planner) success rate, time quantiles over solved
        runs and mean plan length, and per-family head-to-head matrices.
    """
    cells = []
    for (family, planner), group in runs.groupby(['family', 'planner'],
                                                 sort=True):
        solved = group[group['success']]
        cells.append({
            'family': family,
            'planner': planner,
            'runs': int(len(group)),
            'successes': int(len(solved)),
            'success_rate': float(len(solved) / len(group)),
            'crashes': int((group['error'] != '').sum()),
            'time': _quantiles(solved['time'].astype(float)),
            'mean_length': (_clean(float(solved['length'].astype(float).mean()))
                            if len(solved) else None),
        })
    matrices = {}
    for family, group in runs.groupby('family', sort=True):
        matrices[family] = {
            'time': head_to_head(group, 'time'),
            'length': head_to_head(group, 'length'),
        }
    return {'cells': cells, 'head_to_head': matrices}


def records_frame(records: Sequence[RunRecord]) -> pd.DataFrame:
    runs = pd.DataFrame([asdict(r) for r in records], columns=COLUMNS)
    runs['success'] = runs['success'].astype(bool)
    runs['length'] = runs['length'].astype('Int64')
    return runs


def print_summary(summary: dict) -> None:
    """Print the per-cell summary table."""

    def fmt(value):
        return '-' if value is None else f'{value:.3f}'

    rows = [[
        c['family'], c['planner'], c['runs'], f"{c['success_rate']:.2f}",
        fmt(c['time']['median']),
        fmt(c['time']['iqr']),
        fmt(c['time']['mean']),
        fmt(c['mean_length'])
    ] for c in summary['cells']]
    print(tabulate([SUMMARY_HEADERS] + rows, headers='firstrow'))


def write_outputs(records: Sequence[RunRecord], out: Union[str, Path]) -> dict:
    """Write runs.csv, runs.json and summary.json into ``out``."""
    out = Path(out)
    make_dirs(out)
    runs = records_frame(records)
    runs.to_csv(out / 'runs.csv', index=False, lineterminator='\n')
    write_json(out / 'runs.json', [asdict(r) for r in records])
    summary = summarise(runs)
    write_json(out / 'summary.json', summary)
    return summary


def run_suite(families: Sequence[str],
              planners: Sequence[str],
              seeds: Sequence[int],
              out: Union[str, Path],
              config: Optional[PlannerConfig] = None,
              clock: str = 'wall',
              workers: Optional[int] = None,
              verbose: bool = True) -> Tuple[List[RunRecord], dict]:
    """Run every (family, planner, seed) cell and write the outputs.

    Cells run on ``workers`` threads (``SKILLMOSAIC_WORKERS`` by default);
    records keep the family, planner, seed order regardless.

    :raise: :class:`~skillmosaic.exceptions.InputError` without planners,
        seeds or families.
    """
    if not families or not planners or not seeds:
        msg = 'A suite needs at least one family, one planner and one seed.'
        try:
            raise InputError(msg)
        except InputError as e:
            _LOGGER.error(msg, exc_info=True)
            raise e
    config = config if config is not None else PlannerConfig()
    workers = workers if workers is not None else env_workers()
    scenarios = {(f, s): make_scenario(f, s) for f in families for s in seeds}
    cells = [(f, p, s) for f in families for p in planners for s in seeds]
    _LOGGER.info(f'Running {len(cells)} suite cells on {workers} workers.')

    def run(cell):
        family, planner, seed = cell
        return run_cell(scenarios[(family, seed)], family, planner, seed,
                        config, clock)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run, cells))
    else:
        records = [run(cell) for cell in cells]
    summary = write_outputs(records, out)
    if verbose:
        print_summary(summary)
    return records, summary
