"""Planner results, plan validation and planning clocks."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from logging import getLogger
from typing import Dict, List, Optional, Sequence, Tuple

from skillmosaic.exceptions import CapabilityError, InputError
from skillmosaic.mosaic.graph import MosaicGraph, NodeKind, PathStep
from skillmosaic.skills.core import Condition, SkillName, SkillParams
from skillmosaic.skills.library import SkillLibrary
from skillmosaic.world.model import goal_satisfied
from skillmosaic.world.scenario import Scenario
from skillmosaic.world.state import Trajectory, WorldState, states_match

_LOGGER = getLogger(__name__)

NOMINAL_ROLLOUT_SECONDS = 0.001
"""Time charged per rollout by the work clock."""


class StepMode(Enum):
    """How a plan step is reproduced."""

    GENERATE = 'generate'
    """A generator rollout from its own context."""
    CONNECT = 'connect'
    """A connector rollout from the previous terminal state."""
    FROM_STATE = 'from_state'
    """A start-conditioned generator rollout from the previous terminal
    state."""


@dataclass(frozen=True)
class PlanStep:
    """One skill trajectory of a plan."""

    skill: SkillName
    mode: StepMode
    params: SkillParams
    seed: int
    trajectory: Trajectory
    cost: float
    condition: Optional[Condition] = None
    """Target condition of a connector step."""
    ref: Optional[str] = None
    """Graph element the step was taken from, e.g. ``node:3``."""

    def to_dict(self) -> dict:
        d = {
            'skill': self.skill.value,
            'mode': self.mode.value,
            'params': self.params.to_dict(),
            'seed': self.seed,
            'cost': self.cost,
            'samples': len(self.trajectory),
            'initial': self.trajectory.initial.to_dict(),
            'terminal': self.trajectory.terminal.to_dict(),
        }
        if self.ref is not None:
            d['ref'] = self.ref
        return d


@dataclass
class Plan:
    """A successful planner run: the skill steps in execution order."""

    steps: List[PlanStep]
    total_cost: float
    iterations: int
    wall_time: float
    planner: str = 'mosaic'
    graph: Optional[MosaicGraph] = None
    rollouts: int = 0
    success: bool = field(default=True, init=False)

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def skills(self) -> List[SkillName]:
        return [s.skill for s in self.steps]

    def to_dict(self) -> dict:
        return {
            'planner': self.planner,
            'success': True,
            'length': self.length,
            'total_cost': self.total_cost,
            'iterations': self.iterations,
            'wall_time': self.wall_time,
            'rollouts': self.rollouts,
            'steps': [s.to_dict() for s in self.steps],
        }

    def write_snapshot(self, path, scenario: Scenario) -> None:
        """Write the scene, the planner's graph (if any) and the plan steps
        to ``path``."""
        from skillmosaic.mosaic.snapshot import write_snapshot

        write_snapshot(path, scenario, self.graph, self.steps)


@dataclass
class FailureReport:
    """An unsuccessful planner run with what it built."""

    reason: str
    iterations: int
    wall_time: float
    planner: str = 'mosaic'
    graph: Optional[MosaicGraph] = None
    stats: Dict[str, dict] = field(default_factory=dict)
    rollouts: int = 0
    success: bool = field(default=False, init=False)

    def to_dict(self) -> dict:
        d = {
            'planner': self.planner,
            'success': False,
            'reason': self.reason,
            'iterations': self.iterations,
            'wall_time': self.wall_time,
            'rollouts': self.rollouts,
            'stats': self.stats,
        }
        if self.graph is not None:
            d['nodes'] = self.graph.node_count
            d['edges'] = self.graph.edge_count
        return d


class WallClock:
    """Elapsed wall-clock seconds since construction."""

    def __init__(self):
        self._start = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self._start


class WorkClock:
    """Deterministic elapsed time: rollouts executed by a library times a
    nominal rollout duration."""

    def __init__(self,
                 library: SkillLibrary,
                 seconds_per_rollout: float = NOMINAL_ROLLOUT_SECONDS):
        self.library = library
        self.seconds_per_rollout = seconds_per_rollout
        self._offset = library.rollouts

    def elapsed(self) -> float:
        return (self.library.rollouts - self._offset) * self.seconds_per_rollout


def steps_from_path(path: Sequence[PathStep]) -> Tuple[List[PlanStep], float]:
    """Flatten a graph path into plan steps and its total cost.

    Edges become connector steps and generated nodes generator steps; the
    start and terminal singletons carry no motion.
    """
    steps = []
    total = 0.0
    for path_step in path:
        edge = path_step.edge
        if edge is not None:
            total += edge.cost
            steps.append(
                PlanStep(edge.skill, StepMode.CONNECT, edge.params, edge.seed,
                         edge.trajectory, edge.cost, edge.cond1,
                         f'edge:{edge.id}'))
        node = path_step.node
        total += node.cost
        if node.kind is NodeKind.GENERATED:
            steps.append(
                PlanStep(node.skill, StepMode.GENERATE, node.params, node.seed,
                         node.trajectory, node.cost, None, f'node:{node.id}'))
    return steps, total


@dataclass(frozen=True)
class PlanValidation:
    """Outcome of :func:`validate_plan`; ``step`` indexes the first
    violation, ``len(steps)`` for a goal violation."""

    valid: bool
    step: Optional[int] = None
    message: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid


def _resimulate(library: SkillLibrary, scenario: Scenario, step: PlanStep,
                previous: WorldState):
    skill = library.get(step.skill)
    if step.mode is StepMode.GENERATE:
        return skill.generate(scenario, step.params, step.seed)
    if step.mode is StepMode.FROM_STATE:
        return skill.rollout_from(scenario, previous, step.params, step.seed)
    return skill.connect(scenario, previous, step.condition, step.params,
                         step.seed)


def validate_plan(scenario: Scenario,
                  plan: Plan,
                  library: Optional[SkillLibrary] = None) -> PlanValidation:
    """Re-simulate a plan and check it end to end.

    Every step is replayed with its stored parameters and seed: generator
    steps from their own context, connector and start-conditioned steps from
    the previous re-simulated terminal state. The first step must start at
    the scenario start exactly, consecutive boundaries must match within the
    matching tolerances, every replay must be valid and reproduce the stored
    terminal state, and the last state must satisfy the goal.

    :return: A :class:`PlanValidation` describing the first violation.
    """
    library = library if library is not None else SkillLibrary.default()
    eps_pos = library.config.eps_match_pos.value
    eps_rot = library.config.eps_match_rot.value
    previous = scenario.start
    for i, step in enumerate(plan.steps):
        try:
            replay = _resimulate(library, scenario, step, previous)
        except (CapabilityError, InputError) as e:
            return PlanValidation(False, i, f'step {i}: cannot replay: {e}')
        initial = replay.trajectory.initial
        if i == 0 and initial != scenario.start:
            return PlanValidation(
                False, 0, 'step 0 does not start at the start state')
        if i > 0 and not states_match(previous, initial, eps_pos, eps_rot):
            return PlanValidation(
                False, i, f'step {i} does not continue step {i - 1}')
        if not replay.valid:
            return PlanValidation(False, i,
                                  f'step {i}: replay invalid: {replay.reason}')
        if step.condition is not None and not step.condition.matches(
                replay.trajectory.terminal):
            return PlanValidation(
                False, i, f'step {i}: replay misses its target condition')
        if not states_match(replay.trajectory.terminal,
                            step.trajectory.terminal, eps_pos, eps_rot):
            return PlanValidation(
                False, i, f'step {i}: replay does not reproduce the stored '
                'trajectory')
        previous = replay.trajectory.terminal
    if not goal_satisfied(scenario.goal, previous):
        n = len(plan.steps)
        return PlanValidation(False, n, 'final state does not satisfy the goal')
    return PlanValidation(True)
