"""Skills as options: breadth-first search over world states with
start-conditioned skills."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from logging import getLogger
from typing import List, Optional

from skillmosaic.baselines.base import BaselinePlanner
from skillmosaic.config.planner_config import OptionsConfig, PlanBudget
from skillmosaic.mosaic.plan import PlanStep, StepMode
from skillmosaic.skills.core import Condition
from skillmosaic.skills.library import SkillLibrary
from skillmosaic.world.model import goal_satisfied
from skillmosaic.world.scenario import Scenario
from skillmosaic.world.state import WorldState, states_match

_LOGGER = getLogger(__name__)


@dataclass(frozen=True)
class _SearchNode:
    state: WorldState
    parent: Optional[int]
    step: Optional[PlanStep]


class SkillsAsOptionsPlanner(BaselinePlanner):
    """Breadth-first skill chaining.

    Each expanded state first tries every connector towards the goal
    predicate, then samples up to ``max_successors`` parameter sets per
    generator (name order) and rolls them out from the state. Terminal
    states of valid rollouts become successors unless they match a state
    already found.
    """

    name = 'options'

    def __init__(self,
                 scenario: Scenario,
                 library: SkillLibrary,
                 budget: Optional[PlanBudget] = None,
                 config: Optional[OptionsConfig] = None,
                 seed: int = 0,
                 clock=None):
        super().__init__(scenario, library, budget, seed, clock)
        self.config = config if config is not None else OptionsConfig()

    def _path(self, nodes: List[_SearchNode], index: int,
              last: Optional[PlanStep] = None) -> List[PlanStep]:
        steps = [last] if last is not None else []
        while nodes[index].parent is not None:
            steps.append(nodes[index].step)
            index = nodes[index].parent
        steps.reverse()
        return steps

    def _known(self, nodes: List[_SearchNode], state: WorldState) -> bool:
        eps_pos = self.library.config.eps_match_pos.value
        eps_rot = self.library.config.eps_match_rot.value
        return any(states_match(n.state, state, eps_pos, eps_rot)
                   for n in nodes)

    def _plan(self):
        scenario = self.scenario
        nodes = [_SearchNode(scenario.start, None, None)]
        if goal_satisfied(scenario.goal, scenario.start):
            return self._success([])
        goal = Condition.goal_of(scenario.goal)
        frontier = deque([0])
        while frontier:
            index = frontier.popleft()
            state = nodes[index].state
            for skill in self.library.connectors():
                if self._exhausted():
                    return self._failure()
                params = skill.sample_parameters(scenario, self.rng)
                outcome = self.library.invoke_connector(
                    skill, scenario, skill.equality(state), goal, params)
                self.iterations += 1
                if outcome.any_valid:
                    rollout = outcome.representative
                    step = PlanStep(skill.name, StepMode.CONNECT, params,
                                    rollout.seed, rollout.trajectory,
                                    self._cost(outcome), goal)
                    return self._success(self._path(nodes, index, step))
            for skill in self.library.generators():
                for _ in range(self.config.max_successors.value):
                    if self._exhausted():
                        return self._failure()
                    params = skill.sample_parameters(scenario, self.rng)
                    outcome = self.library.invoke_from_state(
                        skill, scenario, state, params)
                    self.iterations += 1
                    if not outcome.any_valid:
                        continue
                    rollout = outcome.representative
                    terminal = rollout.trajectory.terminal
                    step = PlanStep(skill.name, StepMode.FROM_STATE, params,
                                    rollout.seed, rollout.trajectory,
                                    self._cost(outcome))
                    if goal_satisfied(scenario.goal, terminal):
                        return self._success(self._path(nodes, index, step))
                    if self._known(nodes, terminal):
                        continue
                    nodes.append(_SearchNode(terminal, index, step))
                    frontier.append(len(nodes) - 1)
        return self._failure('search space exhausted')
