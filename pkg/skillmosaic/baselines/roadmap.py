"""Roadmap baselines: build a multigraph of skill trajectories first, query it
afterwards.

The roadmap reuses :class:`~skillmosaic.mosaic.graph.MosaicGraph`, so its
edges obey the same continuity checks as the mosaic planner's.
"""
from __future__ import annotations

import math
from logging import getLogger
from typing import Iterable, List, Optional, Set, Tuple

import networkx as nx

from skillmosaic.baselines.base import BaselinePlanner
from skillmosaic.config.planner_config import PlanBudget, RoadmapConfig
from skillmosaic.mosaic.graph import MosaicGraph, NodeKind
from skillmosaic.mosaic.plan import steps_from_path
from skillmosaic.skills.core import Condition, Skill
from skillmosaic.skills.library import SkillLibrary
from skillmosaic.world.model import goal_satisfied
from skillmosaic.world.scenario import Scenario
from skillmosaic.world.state import Trajectory, state_distance

_LOGGER = getLogger(__name__)


class RoadmapPlanner(BaselinePlanner):
    """Two-phase roadmap planner.

    Construction invokes the generators ``size`` times (cycling in name
    order) and connects every new node with every connector to its ``k``
    nearest nodes, both as source and as target. The query adds the start
    as a singleton node linked to its ``k`` nearest nodes and to the nearest
    node of every other component, lets the ``k`` nodes nearest to the goal
    try every connector towards the goal predicate, and runs Dijkstra over
    the result.

    :param config: Roadmap size and neighbour count.
    """

    name = 'roadmap'

    def __init__(self,
                 scenario: Scenario,
                 library: SkillLibrary,
                 budget: Optional[PlanBudget] = None,
                 config: Optional[RoadmapConfig] = None,
                 seed: int = 0,
                 clock=None):
        super().__init__(scenario, library, budget, seed, clock)
        self.config = config if config is not None else RoadmapConfig()
        self.graph = MosaicGraph.for_scenario(scenario, library.config)
        self.goal = Condition.goal_of(scenario.goal)
        self.start_id: Optional[int] = None
        self._goal_tried: Set[int] = set()
        self._bridges_tried: Set[Tuple[int, int]] = set()
        self._generator_index = 0

    @property
    def k(self) -> int:
        return self.config.k.value

    def _connect(self, skill: Skill, source: int,
                 target: Optional[int]) -> bool:
        """One connector invocation between two nodes, or from a node to the
        goal predicate when ``target`` is ``None``."""
        graph = self.graph
        from_cond = skill.equality(graph.node(source).terminal)
        to_cond = (self.goal if target is None else skill.equality(
            graph.node(target).initial))
        params = skill.sample_parameters(self.scenario, self.rng)
        outcome = self.library.invoke_connector(skill, self.scenario,
                                                from_cond, to_cond, params)
        self.iterations += 1
        if not outcome.any_valid:
            return False
        rollout = outcome.representative
        if target is None:
            target = graph.add_mosaic_node(
                NodeKind.TERMINAL,
                Trajectory.point(rollout.trajectory.terminal), 0.0)
        graph.add_mosaic_edge(source, target, skill.name, params, from_cond,
                              to_cond, rollout.trajectory, self._cost(outcome),
                              rollout.seed)
        return True

    def _connect_pairs(self, pairs) -> None:
        for source, target in pairs:
            for skill in self.library.connectors():
                if self._exhausted():
                    return
                if self.graph.connected(source, target):
                    break
                self._connect(skill, source, target)

    def _link(self, node_id: int) -> None:
        """Connect a node to its nearest neighbours in both directions."""
        graph = self.graph
        pairs = [(node_id, other)
                 for other in graph.nearest_neighbors(node_id, self.k)]
        if graph.node(node_id).kind is NodeKind.GENERATED:
            pairs.extend(
                (other, node_id)
                for other in graph.nearest_neighbors(node_id, self.k,
                                                     incoming=True))
        self._connect_pairs(pairs)

    def _link_components(self, node_id: int) -> None:
        """Try one connection from ``node_id`` to the nearest node of every
        other weakly connected component."""
        graph = self.graph
        here = graph.node(node_id)
        pairs = []
        components = sorted(nx.weakly_connected_components(graph), key=min)
        for component in components:
            if node_id in component:
                continue
            candidates = [
                n for n in component
                if graph.node(n).kind is NodeKind.GENERATED
                and (node_id, n) not in self._bridges_tried
            ]
            if not candidates:
                continue
            nearest = min(candidates,
                          key=lambda n: (state_distance(
                              here.terminal, graph.node(n).initial,
                              graph.w_theta), n))
            self._bridges_tried.add((node_id, nearest))
            pairs.append((node_id, nearest))
        self._connect_pairs(pairs)

    def _generate(self) -> Optional[int]:
        generators = self.library.generators()
        skill = generators[self._generator_index % len(generators)]
        self._generator_index += 1
        params = skill.sample_parameters(self.scenario, self.rng)
        outcome = self.library.invoke_generator(skill, self.scenario, params)
        self.iterations += 1
        if not outcome.any_valid:
            return None
        rollout = outcome.representative
        return self.graph.add_mosaic_node(NodeKind.GENERATED,
                                          rollout.trajectory,
                                          self._cost(outcome), skill.name,
                                          params, rollout.seed)

    def construct(self) -> None:
        """One construction round of ``size`` generator invocations."""
        for _ in range(self.config.size.value):
            if self._exhausted():
                return
            node_id = self._generate()
            if node_id is not None:
                self._link(node_id)

    def _goal_distance(self, node_id: int) -> float:
        pose = self.graph.node(node_id).terminal.pose_of(
            self.scenario.goal.target)
        cx, cy = self.scenario.goal.region.center
        return math.hypot(pose.x - cx, pose.y - cy)

    def _goal_candidates(self, preferred: Iterable[int] = ()) -> List[int]:
        """The ``k`` untried nodes nearest to the goal region, nodes in
        ``preferred`` first."""
        graph = self.graph
        preferred = set(preferred)
        ranked = sorted(
            (n not in preferred, self._goal_distance(n), n)
            for n in graph.nodes
            if graph.node(n).kind is not NodeKind.TERMINAL
            and n not in self._goal_tried)
        return [n for _, _, n in ranked[:self.k]]

    def query(self) -> bool:
        """Link the start and the goal into the roadmap; whether a start to
        goal path exists afterwards.

        The start links to its ``k`` nearest nodes and to the nearest node
        of every other component. Goal connections are tried from nodes
        reachable from the start first.
        """
        graph = self.graph
        if self.start_id is None:
            self.start_id = graph.add_mosaic_node(
                NodeKind.START, Trajectory.point(self.scenario.start), 0.0)
        self._link(self.start_id)
        self._link_components(self.start_id)
        from_start, _ = graph.reachable_sets()
        for node_id in self._goal_candidates(from_start):
            self._goal_tried.add(node_id)
            for skill in self.library.connectors():
                if self._exhausted() or self._connect(skill, node_id, None):
                    break
            if node_id in from_start and graph.has_path():
                break
        return graph.has_path()

    def _result(self):
        steps, _ = steps_from_path(self.graph.shortest_path())
        return self._success(steps, self.graph)

    def _plan(self):
        if goal_satisfied(self.scenario.goal, self.scenario.start):
            return self._success([])
        self.construct()
        if self.query():
            return self._result()
        if self._exhausted():
            return self._failure(graph=self.graph)
        return self._failure('roadmap disconnected', self.graph)


class IncrementalRoadmapPlanner(RoadmapPlanner):
    """Roadmap planner that keeps adding construction rounds while start and
    goal stay disconnected."""

    name = 'inc-roadmap'

    def _plan(self):
        if goal_satisfied(self.scenario.goal, self.scenario.start):
            return self._success([])
        rounds = 0
        while not self._exhausted():
            self.construct()
            rounds += 1
            if self.query():
                _LOGGER.debug(f'{self.name}: connected after {rounds} rounds.')
                return self._result()
            if self.config.size.value == 0 and not self._goal_candidates():
                return self._failure('roadmap disconnected', self.graph)
        return self._failure(graph=self.graph)
