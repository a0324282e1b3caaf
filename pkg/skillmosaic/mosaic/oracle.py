"""The statistical oracle guiding mosaic expansion.

It gates the skill type on the node/edge balance of the mosaic, picks skills
with a noisy upper-confidence score, samples parameters and chooses which
pair of boundary conditions a connector should join.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from logging import getLogger
from typing import Dict, List, Optional, Sequence

import numpy as np

from skillmosaic.config.planner_config import OracleConfig
from skillmosaic.exceptions import InputError, PreconditionError
from skillmosaic.mosaic.graph import (MosaicGraph, NodeKind,
                                     PairPenaltyTable)
from skillmosaic.skills.core import (Condition, Skill, SkillName,
                                     SkillParams)
from skillmosaic.world.scenario import Scenario

_LOGGER = getLogger(__name__)

GOAL_TARGET = -1
"""Pair-penalty key standing for the goal predicate."""


class SkillType(Enum):
    """Skill type gate."""

    CONNECTORS = 'connectors'
    ALL = 'all'


class SelectionMode(Enum):
    """Node-pair selection modes."""

    START = 'start'
    GOAL = 'goal'
    START_GOAL = 'start-goal'
    RANDOM = 'random'


class SkillStats:
    """Invocation and success counts per skill."""

    def __init__(self):
        self._invocations: Dict[SkillName, int] = {}
        self._successes: Dict[SkillName, int] = {}

    def record(self, name: SkillName, success: bool) -> None:
        self._invocations[name] = self._invocations.get(name, 0) + 1
        if success:
            self._successes[name] = self._successes.get(name, 0) + 1

    def invocations(self, name: SkillName) -> int:
        return self._invocations.get(name, 0)

    def successes(self, name: SkillName) -> int:
        return self._successes.get(name, 0)

    def success_rate(self, name: SkillName) -> float:
        return self.successes(name) / max(self.invocations(name), 1)

    def to_dict(self) -> Dict[str, dict]:
        return {
            str(name): {
                'invocations': self.invocations(name),
                'successes': self.successes(name),
                'success_rate': self.success_rate(name),
            }
            for name in sorted(self._invocations)
        }


def skill_type_threshold(nodes: int, edges: int, p_lb: float,
                         p_ub: float) -> float:
    """``clamp(E / N, p_lb, p_ub)``."""
    return min(p_ub, max(edges / nodes, p_lb))


def choose_skill_type(nodes: int, edges: int, config: OracleConfig,
                      rng: np.random.Generator) -> SkillType:
    """Connectors only when a uniform draw exceeds the clamped edge/node
    ratio, all skills otherwise.

    :raise: :class:`~skillmosaic.exceptions.PreconditionError` for an empty
        mosaic.
    """
    if nodes < 1:
        msg = 'The skill type is undefined on an empty mosaic.'
        try:
            raise PreconditionError(msg)
        except PreconditionError as e:
            _LOGGER.error(msg, exc_info=True)
            raise e
    threshold = skill_type_threshold(nodes, edges, config.p_lb.value,
                                     config.p_ub.value)
    if rng.random() > threshold:
        return SkillType.CONNECTORS
    return SkillType.ALL


def selection_score(name: SkillName, candidates: Sequence[SkillName],
                    stats: SkillStats, alpha: float) -> float:
    """Noise-free ``alpha * s + (1 - alpha) * sqrt(ln(sum_j(t_j + 1) /
    (t + 1)))`` over the candidate set."""
    total = sum(stats.invocations(c) + 1 for c in candidates)
    bonus = math.sqrt(math.log(total / (stats.invocations(name) + 1)))
    return alpha * stats.success_rate(name) + (1.0 - alpha) * bonus


def choose_skill(candidates: Sequence[Skill], stats: SkillStats,
                 config: OracleConfig, rng: np.random.Generator) -> Skill:
    """Argmax of the selection score plus N(0, 1) noise when enabled; ties go
    to the first skill in name order.

    :raise: :class:`~skillmosaic.exceptions.InputError` for an empty
        candidate list.
    """
    if not candidates:
        msg = 'No candidate skill to choose from.'
        try:
            raise InputError(msg)
        except InputError as e:
            _LOGGER.error(msg, exc_info=True)
            raise e
    ordered = sorted(candidates, key=lambda s: s.name.value)
    names = [s.name for s in ordered]
    alpha = config.alpha.value
    best, best_score = None, -math.inf
    for skill in ordered:
        score = selection_score(skill.name, names, stats, alpha)
        if config.noise.value:
            score += rng.normal()
        if score > best_score:
            best, best_score = skill, score
    return best


def choose_mode(config: OracleConfig,
                rng: np.random.Generator) -> SelectionMode:
    r = rng.random()
    if r < config.p_s.value:
        return SelectionMode.START
    if r < config.p_g.value:
        return SelectionMode.GOAL
    if r < config.p_sg.value:
        return SelectionMode.START_GOAL
    return SelectionMode.RANDOM


@dataclass(frozen=True)
class ConnectionRequest:
    """Conditions a connector should join.

    ``target`` is ``None`` when ``to_cond`` is the goal predicate.
    """

    mode: SelectionMode
    source: int
    target: Optional[int]
    from_cond: Condition
    to_cond: Condition

    @property
    def to_goal(self) -> bool:
        return self.target is None


def _uniform(ids: Sequence[int], rng: np.random.Generator) -> Optional[int]:
    if not ids:
        return None
    return sorted(ids)[int(rng.integers(len(ids)))]


def choose_conds_to_connect(graph: MosaicGraph,
                            config: OracleConfig,
                            penalties: PairPenaltyTable,
                            rng: np.random.Generator,
                            eps_pos: Optional[float] = None,
                            eps_rot: Optional[float] = None
                            ) -> Optional[ConnectionRequest]:
    """Pick the boundary conditions of the next connection attempt.

    START, GOAL and RANDOM modes pick one node uniformly (from the
    start-reachable set, the goal-reaching set or the whole mosaic) and pair
    it with its penalised nearest neighbour; GOAL pairs the node with its
    nearest predecessor. START-GOAL pairs a uniform node of each set. GOAL
    and START-GOAL fall back to RANDOM when their sets are empty. With
    probability ``p_direct_goal`` the target becomes the goal predicate.

    :return: The request, or ``None`` when no eligible pair exists.
    """
    if graph.node_count < 1:
        msg = 'Cannot choose conditions on an empty mosaic.'
        _LOGGER.error(msg)
        raise PreconditionError(msg)
    eps_pos = graph.eps_pos if eps_pos is None else eps_pos
    eps_rot = graph.eps_rot if eps_rot is None else eps_rot
    gamma = config.gamma.value

    def sources(ids):
        return [i for i in ids if graph.node(i).kind is not NodeKind.TERMINAL]

    def targets(ids):
        return [i for i in ids if graph.node(i).kind is not NodeKind.START]

    mode = choose_mode(config, rng)
    from_start, to_goal = graph.reachable_sets()
    if mode is SelectionMode.GOAL and not targets(to_goal):
        mode = SelectionMode.RANDOM
    if mode is SelectionMode.START_GOAL and not (sources(from_start)
                                                 and targets(to_goal)):
        mode = SelectionMode.RANDOM

    source: Optional[int] = None
    target: Optional[int] = None
    if mode is SelectionMode.START:
        source = _uniform(sources(from_start), rng)
    elif mode is SelectionMode.GOAL:
        target = _uniform(targets(to_goal), rng)
        found = graph.nearest_neighbors(target, 1, penalties, gamma,
                                        incoming=True)
        source = found[0] if found else None
    elif mode is SelectionMode.START_GOAL:
        source = _uniform(sources(from_start), rng)
        target = _uniform(targets(to_goal), rng)
        if source == target or graph.connected(source, target):
            target = None
    else:
        source = _uniform(sources(graph.nodes), rng)
    if source is None:
        return None

    direct_goal = rng.random() < config.p_direct_goal.value
    if direct_goal:
        target = None
    elif target is None:
        found = graph.nearest_neighbors(source, 1, penalties, gamma)
        if not found:
            return None
        target = found[0]

    from_cond = Condition.equal_to(graph.node(source).terminal, eps_pos,
                                   eps_rot)
    if target is None:
        to_cond = Condition.goal_of(graph.goal)
    else:
        to_cond = Condition.equal_to(graph.node(target).initial, eps_pos,
                                     eps_rot)
    _LOGGER.debug(f'{mode.value} mode: connect {source} -> '
                  f'{"goal" if target is None else target}.')
    return ConnectionRequest(mode, source, target, from_cond, to_cond)


class Oracle:
    """The oracle of one planner run: configuration, skill statistics, pair
    penalties and a random generator seeded from ``config.seed``."""

    def __init__(self, config: Optional[OracleConfig] = None):
        self.config = config if config is not None else OracleConfig()
        self.stats = SkillStats()
        self.penalties = PairPenaltyTable()
        self.rng = np.random.default_rng(self.config.seed.value)

    def __repr__(self) -> str:
        return f'Oracle(seed={self.config.seed.value})'

    def choose_skill_type(self, graph: MosaicGraph) -> SkillType:
        return choose_skill_type(graph.node_count, graph.edge_count,
                                 self.config, self.rng)

    def choose_skill(self, candidates: Sequence[Skill]) -> Skill:
        return choose_skill(candidates, self.stats, self.config, self.rng)

    def sample_parameters(self, skill: Skill,
                          scenario: Scenario) -> SkillParams:
        return skill.sample_parameters(scenario, self.rng)

    def choose_conds_to_connect(
            self, graph: MosaicGraph) -> Optional[ConnectionRequest]:
        return choose_conds_to_connect(graph, self.config, self.penalties,
                                       self.rng)

    def record_result(self, skill: Skill, success: bool) -> None:
        self.stats.record(skill.name, success)

    def record_pair_failure(self, request: ConnectionRequest) -> int:
        target = GOAL_TARGET if request.to_goal else request.target
        return self.penalties.record_failure(request.source, target)

    def candidates(self, skill_type: SkillType,
                   generators: List[Skill],
                   connectors: List[Skill]) -> List[Skill]:
        """Skills eligible under a skill type. Under ALL, a skill able to
        generate is offered as a generator only."""
        if skill_type is SkillType.CONNECTORS:
            return list(connectors)
        names = {s.name for s in generators}
        return list(generators) + [
            s for s in connectors if s.name not in names
        ]
