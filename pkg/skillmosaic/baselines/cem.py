"""Receding-horizon cross-entropy optimisation of skill sequences."""
from __future__ import annotations

import math
from dataclasses import dataclass
from logging import getLogger
from typing import List, Optional, Sequence, Tuple

import numpy as np

from skillmosaic.baselines.base import BaselinePlanner
from skillmosaic.config.planner_config import CemConfig, PlanBudget
from skillmosaic.mosaic.plan import PlanStep, StepMode
from skillmosaic.skills.core import (Condition, Skill, SkillName,
                                     SkillOutcome, SkillParams, sample_seed)
from skillmosaic.skills.library import SkillLibrary
from skillmosaic.world.geometry import wrap_angle
from skillmosaic.world.model import goal_satisfied
from skillmosaic.world.scenario import Scenario
from skillmosaic.world.state import WorldState

_LOGGER = getLogger(__name__)

MIN_STD = 1e-3
MIN_DISTANCE = 1e-3


@dataclass(frozen=True)
class Action:
    """A discrete choice of the sequence distribution: a skill acting on one
    object, as a start-conditioned generator or as a goal connector."""

    skill: Skill
    object_id: str
    mode: StepMode

    def __str__(self):
        return f'{self.skill.name}({self.object_id}, {self.mode.value})'


def select_elites(scores: Sequence[float], fraction: float) -> List[int]:
    """Indices of the best ``ceil(fraction * n)`` scores (at least one), best
    first, earlier index on ties."""
    n = len(scores)
    count = max(1, int(math.ceil(fraction * n - 1e-9)))
    order = sorted(range(n), key=lambda i: -scores[i])
    return order[:count]


def goal_progress(scenario: Scenario, state: WorldState,
                  bonus: float) -> float:
    """Negative distance of the goal object to the goal region, plus
    ``bonus`` when the goal holds."""
    pose = state.pose_of(scenario.goal.target)
    region = scenario.goal.region
    dx = max(region.xmin - pose.x, 0.0, pose.x - region.xmax)
    dy = max(region.ymin - pose.y, 0.0, pose.y - region.ymax)
    score = -math.hypot(dx, dy)
    if goal_satisfied(scenario.goal, state):
        score += bonus
    return score


class SequenceDistribution:
    """Per-position categorical over actions and independent Gaussians over
    the continuous skill parameters."""

    def __init__(self, n_actions: int, horizon: int, max_distance: float):
        self.n_actions = n_actions
        self.horizon = horizon
        self.max_distance = max_distance
        self.probs = np.full((horizon, n_actions), 1.0 / n_actions)
        self.mean = np.tile(self._initial_mean(), (horizon, 1))
        self.std = np.tile(self._initial_std(), (horizon, 1))

    def _initial_mean(self) -> np.ndarray:
        return np.array([0.0, self.max_distance / 2.0, 0.0])

    def _initial_std(self) -> np.ndarray:
        return np.array([math.pi, self.max_distance / 2.0, math.pi])

    def sample(self, rng: np.random.Generator
               ) -> Tuple[np.ndarray, np.ndarray]:
        actions = np.array(
            [rng.choice(self.n_actions, p=self.probs[h])
             for h in range(self.horizon)])
        values = rng.normal(self.mean, self.std)
        return actions, values

    def refit(self, actions: np.ndarray, values: np.ndarray,
              smoothing: float) -> None:
        """Blend the elite estimate into the distribution:
        ``new = smoothing * elite + (1 - smoothing) * old``."""
        counts = np.stack([
            np.bincount(actions[:, h], minlength=self.n_actions)
            for h in range(self.horizon)
        ])
        freq = counts / counts.sum(axis=1, keepdims=True)
        self.probs = smoothing * freq + (1.0 - smoothing) * self.probs
        self.probs /= self.probs.sum(axis=1, keepdims=True)
        self.mean = smoothing * values.mean(axis=0) + (1.0 -
                                                       smoothing) * self.mean
        self.std = np.maximum(
            smoothing * values.std(axis=0) + (1.0 - smoothing) * self.std,
            MIN_STD)

    def shift(self) -> None:
        """Drop the committed first position and append a fresh one."""
        self.probs = np.vstack(
            [self.probs[1:], np.full(self.n_actions, 1.0 / self.n_actions)])
        self.mean = np.vstack([self.mean[1:], self._initial_mean()])
        self.std = np.vstack([self.std[1:], self._initial_std()])


class CemPlanner(BaselinePlanner):
    """Cross-entropy method in receding horizon.

    Each outer round samples ``population`` sequences of ``horizon``
    actions, rolls them out from the current state (a sequence stops at its
    first failed skill), scores the reached state by goal progress, refits
    the distribution to the elite fraction and commits the first skill of the
    best sequence when it succeeded.
    """

    name = 'cem'

    def __init__(self,
                 scenario: Scenario,
                 library: SkillLibrary,
                 budget: Optional[PlanBudget] = None,
                 config: Optional[CemConfig] = None,
                 seed: int = 0,
                 clock=None):
        super().__init__(scenario, library, budget, seed, clock)
        self.config = config if config is not None else CemConfig()
        self.actions = self._actions()
        self.goal = Condition.goal_of(scenario.goal)

    def _actions(self) -> List[Action]:
        scenario = self.scenario
        actions = []
        for skill in self.library.generators():
            ids = (scenario.graspable_ids if skill.name is SkillName.PICK
                   else scenario.pushable_ids)
            actions.extend(
                Action(skill, object_id, StepMode.FROM_STATE)
                for object_id in ids)
        for skill in self.library.connectors():
            actions.append(
                Action(skill, scenario.goal.target, StepMode.CONNECT))
        return actions

    def _params(self, action: Action, values: np.ndarray) -> SkillParams:
        limit = self.scenario.params.max_push_distance
        direction, distance, grasp_angle = values
        return SkillParams(
            skill=action.skill.name,
            seed=sample_seed(self.rng),
            object_id=action.object_id,
            direction=wrap_angle(float(direction)),
            distance=float(np.clip(distance, MIN_DISTANCE, limit)),
            grasp_angle=wrap_angle(float(grasp_angle)),
        )

    def _invoke(self, action: Action, state: WorldState,
                params: SkillParams) -> SkillOutcome:
        self.iterations += 1
        if action.mode is StepMode.CONNECT:
            return self.library.invoke_connector(action.skill, self.scenario,
                                                 action.skill.equality(state),
                                                 self.goal, params)
        return self.library.invoke_from_state(action.skill, self.scenario,
                                              state, params)

    def _rollout_sequence(self, state: WorldState, actions: np.ndarray,
                          values: np.ndarray):
        """Score one sequence; returns the score and the first step, if the
        first skill succeeded."""
        first = None
        for h in range(len(actions)):
            if self._exhausted():
                break
            action = self.actions[int(actions[h])]
            params = self._params(action, values[h])
            outcome = self._invoke(action, state, params)
            if not outcome.any_valid:
                break
            rollout = outcome.representative
            if h == 0:
                first = PlanStep(
                    action.skill.name, action.mode, params, rollout.seed,
                    rollout.trajectory, self._cost(outcome),
                    self.goal if action.mode is StepMode.CONNECT else None)
            state = rollout.trajectory.terminal
            if goal_satisfied(self.scenario.goal, state):
                break
        return goal_progress(self.scenario, state,
                             self.config.goal_bonus.value), first

    def _plan(self):
        scenario = self.scenario
        state = scenario.start
        steps: List[PlanStep] = []
        if goal_satisfied(scenario.goal, state):
            return self._success(steps)
        if not self.actions:
            return self._failure('no applicable action')
        distribution = SequenceDistribution(len(self.actions),
                                            self.config.horizon.value,
                                            scenario.params.max_push_distance)
        population = self.config.population.value
        for _ in range(self.config.max_rounds.value):
            if self._exhausted():
                break
            samples = [distribution.sample(self.rng) for _ in range(population)]
            results = []
            for actions, values in samples:
                if self._exhausted():
                    break
                results.append(self._rollout_sequence(state, actions, values))
            if not results:
                break
            scores = [score for score, _ in results]
            elites = select_elites(scores, self.config.elite_fraction.value)
            distribution.refit(
                np.stack([samples[i][0] for i in elites]),
                np.stack([samples[i][1] for i in elites]),
                self.config.smoothing.value)
            best_step = results[elites[0]][1]
            if best_step is None:
                continue
            steps.append(best_step)
            state = best_step.trajectory.terminal
            distribution.shift()
            _LOGGER.debug(f'cem: committed {best_step.skill} '
                          f'(score {scores[elites[0]]:.3f}).')
            if goal_satisfied(scenario.goal, state):
                return self._success(steps)
        if not self._exhausted():
            return self._failure('round limit reached')
        return self._failure()
