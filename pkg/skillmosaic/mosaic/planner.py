"""The mosaic planner main loop."""
from __future__ import annotations

from logging import getLogger
from typing import Optional, Union

from skillmosaic.config.planner_config import PlanBudget, PlannerConfig
from skillmosaic.exceptions import PlannerError, UndefinedCostError
from skillmosaic.mosaic.graph import MosaicGraph, NodeKind
from skillmosaic.mosaic.oracle import ConnectionRequest, Oracle, SkillType
from skillmosaic.mosaic.plan import (FailureReport, Plan, WallClock,
                                     steps_from_path, validate_plan)
from skillmosaic.skills.core import Skill, SkillOutcome, outcome_cost
from skillmosaic.skills.library import SkillLibrary
from skillmosaic.world.model import goal_satisfied
from skillmosaic.world.scenario import Scenario
from skillmosaic.world.state import Trajectory

_LOGGER = getLogger(__name__)

PlanResult = Union[Plan, FailureReport]


class MosaicPlanner:
    """Grows a mosaic of skill trajectories until the start connects to the
    goal.

    Generators first run in name order until one valid node exists, then the
    start node is added. Each further iteration lets the oracle gate the
    skill type and pick a skill: a generator adds a node when one of its
    rollouts is valid, a connector joins the oracle's chosen conditions with
    an edge (or with a new terminal node when the target is the goal
    predicate). When the oracle finds no pair to connect, the iteration
    invokes a generator instead. Every skill invocation counts as one
    iteration.

    :param scenario: The problem.
    :param library: The skill set.
    :param oracle: The oracle, seeded from its config.
    :param budget: Iteration and time limits.
    :param clock: Object with ``elapsed()`` seconds, wall clock by default.
    """

    name = 'mosaic'

    def __init__(self,
                 scenario: Scenario,
                 library: SkillLibrary,
                 oracle: Optional[Oracle] = None,
                 budget: Optional[PlanBudget] = None,
                 clock=None):
        if len(library) == 0 or not library.generators():
            msg = 'The mosaic planner needs at least one generator skill.'
            try:
                raise PlannerError(msg)
            except PlannerError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e
        self.scenario = scenario
        self.library = library
        self.oracle = oracle if oracle is not None else Oracle()
        self.budget = budget if budget is not None else PlanBudget()
        self.clock = clock
        self.graph = MosaicGraph.for_scenario(scenario, library.config)
        self.iterations = 0

    def _exhausted(self) -> bool:
        return (self.iterations >= self.budget.max_iterations.value
                or self.clock.elapsed() >= self.budget.time_limit.value)

    def _cost(self, outcome: SkillOutcome) -> float:
        return outcome_cost(outcome, self.library.config.cost_lambda.value,
                            self.scenario.params.w_theta)

    def _generate(self, skill: Skill) -> bool:
        params = self.oracle.sample_parameters(skill, self.scenario)
        outcome = self.library.invoke_generator(skill, self.scenario, params)
        self.iterations += 1
        success = outcome.any_valid
        self.oracle.record_result(skill, success)
        if success:
            rollout = outcome.representative
            self.graph.add_mosaic_node(NodeKind.GENERATED, rollout.trajectory,
                                       self._cost(outcome), skill.name, params,
                                       rollout.seed)
        return success

    def _connect(self, skill: Skill, request: ConnectionRequest) -> bool:
        params = self.oracle.sample_parameters(skill, self.scenario)
        outcome = self.library.invoke_connector(skill, self.scenario,
                                                request.from_cond,
                                                request.to_cond, params)
        self.iterations += 1
        success = outcome.any_valid
        self.oracle.record_result(skill, success)
        if not success:
            self.oracle.record_pair_failure(request)
            return False
        rollout = outcome.representative
        try:
            cost = self._cost(outcome)
        except UndefinedCostError:
            return False
        target = request.target
        if target is None:
            target = self.graph.add_mosaic_node(
                NodeKind.TERMINAL, Trajectory.point(rollout.trajectory.terminal),
                0.0)
        self.graph.add_mosaic_edge(request.source, target, skill.name, params,
                                   request.from_cond, request.to_cond,
                                   rollout.trajectory, cost, rollout.seed)
        return True

    def _initialise(self) -> None:
        while self.graph.node_count == 0 and not self._exhausted():
            for skill in self.library.generators():
                if self._exhausted():
                    break
                self._generate(skill)

    def _step(self) -> None:
        generators = self.library.generators()
        skill_type = self.oracle.choose_skill_type(self.graph)
        candidates = self.oracle.candidates(skill_type, generators,
                                            self.library.connectors())
        if not candidates:
            skill_type, candidates = SkillType.ALL, generators
        skill = self.oracle.choose_skill(candidates)
        as_connector = (skill_type is SkillType.CONNECTORS
                        or not skill.skill_id.can_generate)
        if as_connector:
            request = self.oracle.choose_conds_to_connect(self.graph)
            if request is not None:
                self._connect(skill, request)
                return
            skill = self.oracle.choose_skill(generators)
        self._generate(skill)

    def plan(self) -> PlanResult:
        if self.clock is None:
            self.clock = WallClock()
        start_is_goal = goal_satisfied(self.scenario.goal, self.scenario.start)
        if not start_is_goal:
            self._initialise()
        self.graph.add_mosaic_node(NodeKind.START,
                                   Trajectory.point(self.scenario.start), 0.0)
        while not self.graph.has_path() and not self._exhausted():
            self._step()
        elapsed = self.clock.elapsed()
        if not self.graph.has_path():
            reason = ('iteration budget exhausted'
                      if self.iterations >= self.budget.max_iterations.value
                      else 'time budget exhausted')
            _LOGGER.info(f'{self.name}: no plan for {self.scenario.name} '
                         f'after {self.iterations} iterations ({reason}).')
            return FailureReport(reason, self.iterations, elapsed, self.name,
                                 self.graph, self.oracle.stats.to_dict(),
                                 self.library.rollouts)
        steps, total = steps_from_path(self.graph.shortest_path())
        result = Plan(steps, total, self.iterations, elapsed, self.name,
                      self.graph, self.library.rollouts)
        check = validate_plan(self.scenario, result, self.library)
        if not check:
            _LOGGER.error(f'{self.name}: extracted plan rejected on replay: '
                          f'{check.message}')
            return FailureReport(f'plan failed validation: {check.message}',
                                 self.iterations, elapsed, self.name,
                                 self.graph, self.oracle.stats.to_dict(),
                                 self.library.rollouts)
        _LOGGER.info(f'{self.name}: plan of {len(steps)} steps for '
                     f'{self.scenario.name} after {self.iterations} '
                     f'iterations, cost {total:.4f}.')
        return result


def plan(scenario: Scenario,
         library: Optional[SkillLibrary] = None,
         oracle: Optional[Oracle] = None,
         budget: Optional[PlanBudget] = None,
         clock=None) -> PlanResult:
    """Run the mosaic planner once."""
    library = library if library is not None else SkillLibrary.default(
        names=scenario.skills)
    return MosaicPlanner(scenario, library, oracle, budget, clock).plan()


def plan_with_config(scenario: Scenario,
                     config: PlannerConfig,
                     clock=None) -> PlanResult:
    """Run the mosaic planner with every component built from ``config``."""
    library = SkillLibrary.default(config.skills, scenario.skills)
    return plan(scenario, library, Oracle(config.oracle), config.budget, clock)
