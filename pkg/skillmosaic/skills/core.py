"""Skill identities, parameters, conditions, rollout outcomes and costs."""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, replace
from enum import Enum
from logging import getLogger
from typing import Optional, Sequence, Tuple

import numpy as np

from skillmosaic.config.planner_config import SkillsConfig
from skillmosaic.exceptions import (CapabilityError, InputError,
                                    ParameterError, UndefinedCostError)
from skillmosaic.world.geometry import Pose2
from skillmosaic.world.model import Rollout, goal_satisfied
from skillmosaic.world.scenario import GoalSpec, Scenario
from skillmosaic.world.state import WorldState, states_match

_LOGGER = getLogger(__name__)

SEED_LIMIT = 2**32
MIN_COST = 1e-6
CONTEXT_STREAM = 0x5EED


class SkillName(Enum):
    """The skills of the library."""

    PICK = 'pick'
    PUSH = 'push'
    REARRANGE = 'rearrange'
    TRANSPORT = 'transport'

    def __str__(self):
        return self.value

    def __lt__(self, other: SkillName) -> bool:
        return self.value < other.value


@dataclass(frozen=True)
class SkillId:
    """A skill and the roles it can play."""

    name: SkillName
    can_generate: bool
    can_connect: bool

    def __str__(self):
        return self.name.value


SKILL_IDS = {
    SkillName.PUSH: SkillId(SkillName.PUSH, True, True),
    SkillName.PICK: SkillId(SkillName.PICK, True, False),
    SkillName.TRANSPORT: SkillId(SkillName.TRANSPORT, False, True),
    SkillName.REARRANGE: SkillId(SkillName.REARRANGE, False, True),
}
"""Capability matrix of the library."""


@dataclass(frozen=True)
class SkillParams:
    """Parameters of one skill invocation.

    ``seed`` drives the deterministic parts of an invocation (context
    sampling), rollout ``i`` of a batch draws its noise from ``seed + i``.
    ``direction`` is a heading in radians.
    """

    skill: SkillName
    seed: int
    object_id: Optional[str] = None
    direction: Optional[float] = None
    distance: Optional[float] = None
    grasp_angle: Optional[float] = None
    object_pose: Optional[Pose2] = None
    target_pose: Optional[Pose2] = None

    def __post_init__(self):
        if not isinstance(self.seed, (int, np.integer)) or not (
                0 <= self.seed < SEED_LIMIT):
            msg = f'Seed {self.seed} outside [0, 2^32).'
            try:
                raise ParameterError(msg)
            except ParameterError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e
        object.__setattr__(self, 'seed', int(self.seed))
        if self.distance is not None and self.distance <= 0.0:
            msg = f'Distance {self.distance} must be positive.'
            try:
                raise ParameterError(msg)
            except ParameterError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e

    def rollout_seed(self, index: int) -> int:
        return self.seed + index

    def context_rng(self) -> np.random.Generator:
        """Generator for the deterministic context of this invocation."""
        return np.random.default_rng([self.seed, CONTEXT_STREAM])

    def direction_vector(self) -> np.ndarray:
        return np.array([math.cos(self.direction), math.sin(self.direction)])

    def with_seed(self, seed: int) -> SkillParams:
        return replace(self, seed=seed)

    def to_dict(self) -> dict:
        d = {'skill': self.skill.value, 'seed': self.seed}
        for key in ('object_id', 'direction', 'distance', 'grasp_angle'):
            value = getattr(self, key)
            if value is not None:
                d[key] = value
        for key in ('object_pose', 'target_pose'):
            value = getattr(self, key)
            if value is not None:
                d[key] = value.to_list()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> SkillParams:
        return cls(
            skill=SkillName(d['skill']),
            seed=int(d['seed']),
            object_id=d.get('object_id'),
            direction=d.get('direction'),
            distance=d.get('distance'),
            grasp_angle=d.get('grasp_angle'),
            object_pose=Pose2.from_list(d['object_pose'])
            if d.get('object_pose') else None,
            target_pose=Pose2.from_list(d['target_pose'])
            if d.get('target_pose') else None,
        )


class ConditionKind(Enum):
    EQUALITY = 'equality'
    GOAL = 'goal'


@dataclass(frozen=True)
class Condition:
    """A state condition: equality to a state within tolerances, or the goal
    predicate."""

    kind: ConditionKind
    state: Optional[WorldState] = None
    goal: Optional[GoalSpec] = None
    eps_pos: float = 0.01
    eps_rot: float = 0.05

    @classmethod
    def equal_to(cls,
                 state: WorldState,
                 eps_pos: float = 0.01,
                 eps_rot: float = 0.05) -> Condition:
        return cls(ConditionKind.EQUALITY, state, None, eps_pos, eps_rot)

    @classmethod
    def goal_of(cls, goal: GoalSpec) -> Condition:
        return cls(ConditionKind.GOAL, None, goal)

    @property
    def is_goal(self) -> bool:
        return self.kind is ConditionKind.GOAL

    def matches(self, state: WorldState) -> bool:
        if self.is_goal:
            return goal_satisfied(self.goal, state)
        return states_match(self.state, state, self.eps_pos, self.eps_rot)


@dataclass(frozen=True)
class SkillOutcome:
    """The K rollouts of one invocation.

    ``selected`` is the valid rollout with the shortest path, lowest index on
    ties, or ``None`` when every rollout failed.
    """

    rollouts: Tuple[Rollout, ...]
    w_theta: float = 0.1
    selected: Optional[int] = field(default=None, init=False)

    def __post_init__(self):
        if not self.rollouts:
            msg = 'A skill outcome needs at least one rollout.'
            _LOGGER.error(msg)
            raise InputError(msg)
        best, best_length = None, math.inf
        for i, rollout in enumerate(self.rollouts):
            if rollout.valid:
                length = rollout.trajectory.path_length(self.w_theta)
                if length < best_length:
                    best, best_length = i, length
        object.__setattr__(self, 'selected', best)

    @property
    def k(self) -> int:
        return len(self.rollouts)

    @property
    def any_valid(self) -> bool:
        return self.selected is not None

    @property
    def valid_flags(self) -> Tuple[bool, ...]:
        return tuple(r.valid for r in self.rollouts)

    @property
    def invalid_fraction(self) -> float:
        return sum(not r.valid for r in self.rollouts) / self.k

    @property
    def representative(self) -> Rollout:
        if self.selected is None:
            msg = 'Outcome has no valid rollout.'
            _LOGGER.error(msg)
            raise UndefinedCostError(msg)
        return self.rollouts[self.selected]

    def first_failure(self) -> Optional[str]:
        for rollout in self.rollouts:
            if not rollout.valid:
                return rollout.reason
        return None


def outcome_cost(outcome: SkillOutcome, cost_lambda: float,
                 w_theta: Optional[float] = None) -> float:
    """Mean valid path length inflated by the invalid fraction:
    ``L * (1 + lambda * f_inv)``.

    :raise: :class:`~skillmosaic.exceptions.UndefinedCostError` when no
        rollout is valid.
    """
    w = outcome.w_theta if w_theta is None else w_theta
    lengths = [
        r.trajectory.path_length(w) for r in outcome.rollouts if r.valid
    ]
    if not lengths:
        msg = 'Cost of an outcome without valid rollouts is undefined.'
        try:
            raise UndefinedCostError(msg)
        except UndefinedCostError as e:
            _LOGGER.error(msg, exc_info=True)
            raise e
    mean_length = max(float(np.mean(lengths)), MIN_COST)
    return mean_length * (1.0 + cost_lambda * outcome.invalid_fraction)


class Skill(ABC):
    """A parametric skill.

    Generators implement :meth:`generate` (and the start-conditioned
    :meth:`rollout_from`), connectors implement :meth:`connect`. Physical
    failure never raises: it is an invalid :class:`Rollout` with a reason.
    """

    skill_id: SkillId

    def __init__(self, config: Optional[SkillsConfig] = None):
        self.config = config if config is not None else SkillsConfig()

    @property
    def name(self) -> SkillName:
        return self.skill_id.name

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}()'

    def equality(self, state: WorldState) -> Condition:
        """Equality condition at the configured matching tolerances."""
        return Condition.equal_to(state, self.config.eps_match_pos.value,
                                  self.config.eps_match_rot.value)

    @abstractmethod
    def sample_parameters(self, scenario: Scenario,
                          rng: np.random.Generator) -> SkillParams:
        """Draw parameters with positive density on the whole admissible
        range."""
        pass

    def generate(self, scenario: Scenario, params: SkillParams,
                 seed: int) -> Rollout:
        msg = f'{self.name} cannot be used as a generator.'
        _LOGGER.error(msg)
        raise CapabilityError(msg)

    def rollout_from(self, scenario: Scenario, state: WorldState,
                     params: SkillParams, seed: int) -> Rollout:
        msg = f'{self.name} has no start-conditioned mode.'
        _LOGGER.error(msg)
        raise CapabilityError(msg)

    def connect(self, scenario: Scenario, state: WorldState, to: Condition,
                params: SkillParams, seed: int) -> Rollout:
        msg = f'{self.name} cannot be used as a connector.'
        _LOGGER.error(msg)
        raise CapabilityError(msg)


def sample_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, SEED_LIMIT, dtype=np.uint64))


def pick_object(candidates: Sequence[str], rng: np.random.Generator) -> str:
    if not candidates:
        msg = 'No object qualifies for this skill.'
        _LOGGER.error(msg)
        raise InputError(msg)
    return candidates[int(rng.integers(len(candidates)))]
