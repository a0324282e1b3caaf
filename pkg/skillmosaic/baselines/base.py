"""Shared plumbing of the baseline planners."""
from __future__ import annotations

from abc import ABC, abstractmethod
from logging import getLogger
from typing import List, Optional

import numpy as np

from skillmosaic.config.planner_config import PlanBudget
from skillmosaic.exceptions import PlannerError
from skillmosaic.mosaic.graph import MosaicGraph
from skillmosaic.mosaic.plan import (FailureReport, Plan, PlanStep, WallClock,
                                     validate_plan)
from skillmosaic.skills.core import SkillOutcome, outcome_cost
from skillmosaic.skills.library import SkillLibrary
from skillmosaic.world.scenario import Scenario

_LOGGER = getLogger(__name__)


class BaselinePlanner(ABC):
    """A comparison planner over the same skills, world model and seeds as
    the mosaic planner.

    :param scenario: The problem.
    :param library: The skill set.
    :param budget: Iteration and time limits; iterations count skill
        invocations.
    :param seed: Seed of the planner's random generator.
    :param clock: Object with ``elapsed()`` seconds, wall clock by default.
    """

    name: str

    def __init__(self,
                 scenario: Scenario,
                 library: SkillLibrary,
                 budget: Optional[PlanBudget] = None,
                 seed: int = 0,
                 clock=None):
        if not library.generators():
            msg = f'The {self.name} planner needs at least one generator skill.'
            try:
                raise PlannerError(msg)
            except PlannerError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e
        self.scenario = scenario
        self.library = library
        self.budget = budget if budget is not None else PlanBudget()
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.clock = clock
        self.iterations = 0

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(seed={self.seed})'

    def _exhausted(self) -> bool:
        return (self.iterations >= self.budget.max_iterations.value
                or self.clock.elapsed() >= self.budget.time_limit.value)

    def _cost(self, outcome: SkillOutcome) -> float:
        return outcome_cost(outcome, self.library.config.cost_lambda.value,
                            self.scenario.params.w_theta)

    def _success(self,
                 steps: List[PlanStep],
                 graph: Optional[MosaicGraph] = None) -> Plan:
        total = sum(s.cost for s in steps)
        _LOGGER.info(f'{self.name}: plan of {len(steps)} steps for '
                     f'{self.scenario.name} after {self.iterations} '
                     'iterations.')
        return Plan(steps, total, self.iterations, self.clock.elapsed(),
                    self.name, graph, self.library.rollouts)

    def _failure(self,
                 reason: Optional[str] = None,
                 graph: Optional[MosaicGraph] = None) -> FailureReport:
        if reason is None:
            reason = ('iteration budget exhausted'
                      if self.iterations >= self.budget.max_iterations.value
                      else 'time budget exhausted')
        _LOGGER.info(f'{self.name}: no plan for {self.scenario.name} '
                     f'({reason}).')
        return FailureReport(reason, self.iterations, self.clock.elapsed(),
                             self.name, graph, {}, self.library.rollouts)

    def plan(self):
        """Run the planner once; a :class:`Plan` or a
        :class:`FailureReport`. Plans are replayed before being returned."""
        if self.clock is None:
            self.clock = WallClock()
        result = self._plan()
        if not result.success:
            return result
        check = validate_plan(self.scenario, result, self.library)
        if check:
            return result
        _LOGGER.error(f'{self.name}: plan rejected on replay: {check.message}')
        return FailureReport(f'plan failed validation: {check.message}',
                             result.iterations, result.wall_time, self.name,
                             result.graph, {}, result.rollouts)

    @abstractmethod
    def _plan(self):
        pass
