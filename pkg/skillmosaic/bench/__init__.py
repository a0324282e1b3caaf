"""Benchmark harness: scenario families, planner runs, suites and figures."""
from skillmosaic.bench.runner import PLANNERS, run_planner
from skillmosaic.bench.scenarios import (FAMILIES, find_push_corridors,
                                         has_direct_grasp, make_scenario)
from skillmosaic.bench.suite import RunRecord, run_suite, summarise

__all__ = [
    'FAMILIES', 'PLANNERS', 'RunRecord', 'find_push_corridors',
    'has_direct_grasp', 'make_scenario', 'run_planner', 'run_suite',
    'summarise'
]
