"""Runs one planner on one scenario with a shared configuration."""
from __future__ import annotations

import copy
from logging import getLogger
from typing import Optional, Union

from skillmosaic.baselines import (CemPlanner, IncrementalRoadmapPlanner,
                                   RoadmapPlanner, SkillsAsOptionsPlanner)
from skillmosaic.config.planner_config import PlannerConfig
from skillmosaic.exceptions import InputError
from skillmosaic.mosaic.oracle import Oracle
from skillmosaic.mosaic.plan import FailureReport, Plan, WallClock, WorkClock
from skillmosaic.mosaic.planner import MosaicPlanner
from skillmosaic.skills.library import SkillLibrary
from skillmosaic.world.scenario import Scenario

_LOGGER = getLogger(__name__)

PLANNERS = ('mosaic', 'options', 'cem', 'roadmap', 'inc-roadmap')
CLOCKS = ('work', 'wall')


def scenario_config(scenario: Scenario,
                    config: Optional[PlannerConfig] = None) -> PlannerConfig:
    """A copy of ``config`` with the scenario's "skills" and "oracle"
    overrides applied."""
    merged = copy.deepcopy(config) if config is not None else PlannerConfig()
    if scenario.overrides:
        merged.set_from_dict(scenario.overrides)
        merged.raise_if_invalid()
    return merged


def make_clock(kind: str, library: SkillLibrary):
    if kind == 'work':
        return WorkClock(library)
    if kind == 'wall':
        return WallClock()
    msg = f"Unknown clock '{kind}', expected one of {CLOCKS}."
    _LOGGER.error(msg)
    raise InputError(msg)


def run_planner(planner: str,
                scenario: Scenario,
                config: Optional[PlannerConfig] = None,
                seed: int = 0,
                clock: str = 'wall') -> Union[Plan, FailureReport]:
    """Run ``planner`` once.

    The seed drives the oracle of the mosaic planner and the random
    generator of the baselines. Every planner gets a fresh skill library
    restricted to the scenario's skills, so rollout counts start at zero.

    :raise: :class:`~skillmosaic.exceptions.InputError` for an unknown
        planner or clock.
    """
    if planner not in PLANNERS:
        msg = f"Unknown planner '{planner}', expected one of {PLANNERS}."
        try:
            raise InputError(msg)
        except InputError as e:
            _LOGGER.error(msg, exc_info=True)
            raise e
    config = scenario_config(scenario, config)
    library = SkillLibrary.default(config.skills, scenario.skills)
    timer = make_clock(clock, library)
    if planner == 'mosaic':
        config.oracle.seed.set_value(seed)
        return MosaicPlanner(scenario, library, Oracle(config.oracle),
                             config.budget, timer).plan()
    if planner == 'options':
        runner = SkillsAsOptionsPlanner(scenario, library, config.budget,
                                        config.options, seed, timer)
    elif planner == 'cem':
        runner = CemPlanner(scenario, library, config.budget, config.cem, seed,
                            timer)
    elif planner == 'roadmap':
        runner = RoadmapPlanner(scenario, library, config.budget,
                                config.roadmap, seed, timer)
    else:
        runner = IncrementalRoadmapPlanner(scenario, library, config.budget,
                                           config.roadmap, seed, timer)
    return runner.plan()
