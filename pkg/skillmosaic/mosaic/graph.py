"""The mosaic: a directed multigraph of skill trajectories.

Nodes hold generator trajectories (plus the start and goal singletons),
edges hold connector trajectories. An edge always starts where its source
node's trajectory ends and ends where its target node's trajectory begins,
within the matching tolerances.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from logging import getLogger
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx

from skillmosaic.config.planner_config import SkillsConfig
from skillmosaic.exceptions import GraphValidationError, PathNotFoundError
from skillmosaic.skills.core import Condition, SkillName, SkillParams
from skillmosaic.world.model import goal_satisfied
from skillmosaic.world.scenario import GoalSpec, Scenario
from skillmosaic.world.state import (Trajectory, WorldState, state_distance,
                                     states_match)

_LOGGER = getLogger(__name__)


class NodeKind(Enum):
    """Origin of a mosaic node."""

    START = 'start'
    """The singleton start state, cost 0."""
    GENERATED = 'generated'
    """A generator trajectory."""
    TERMINAL = 'terminal'
    """A singleton goal state reached by a connector (or a roadmap goal
    vertex)."""


@dataclass(frozen=True)
class MosaicNode:
    """A trajectory island of the mosaic."""

    id: int
    kind: NodeKind
    trajectory: Trajectory
    cost: float
    skill: Optional[SkillName] = None
    params: Optional[SkillParams] = None
    seed: Optional[int] = None
    """Seed of the representative rollout."""

    @property
    def initial(self) -> WorldState:
        return self.trajectory.initial

    @property
    def terminal(self) -> WorldState:
        return self.trajectory.terminal


@dataclass(frozen=True)
class MosaicEdge:
    """A connector trajectory between two nodes."""

    id: int
    source: int
    target: int
    skill: SkillName
    params: SkillParams
    cond0: Condition
    cond1: Condition
    trajectory: Trajectory
    cost: float
    seed: Optional[int] = None


class PairPenaltyTable:
    """Failed connection attempts per directed node pair."""

    def __init__(self):
        self._failures: Counter = Counter()

    def __len__(self) -> int:
        return len(self._failures)

    def record_failure(self, source: int, target: int) -> int:
        self._failures[(source, target)] += 1
        return self._failures[(source, target)]

    def count(self, source: int, target: int) -> int:
        return self._failures.get((source, target), 0)

    def factor(self, source: int, target: int, gamma: float) -> float:
        """Distance inflation ``1 + gamma * failures``."""
        return 1.0 + gamma * self.count(source, target)

    def to_dict(self) -> Dict[str, int]:
        return {f'{a}->{b}': n for (a, b), n in sorted(self._failures.items())}


@dataclass(frozen=True)
class PathStep:
    """One node of a graph path with the edge that led into it."""

    node: MosaicNode
    edge: Optional[MosaicEdge] = None


class MosaicGraph(nx.MultiDiGraph):
    """The mosaic multigraph.

    MosaicGraph extends networkx.MultiDiGraph: graph node keys are integer
    ids carrying the :class:`MosaicNode` under the ``data`` attribute, edge
    keys are edge ids carrying the :class:`MosaicEdge`.

    :param goal: The goal predicate of the problem; no node is a goal node
        without one.
    :param eps_pos: Position tolerance of boundary matching (m).
    :param eps_rot: Angle tolerance of boundary matching (rad).
    :param w_theta: Angular weight of the node distance.
    """

    def __init__(self,
                 goal: Optional[GoalSpec] = None,
                 eps_pos: float = 0.01,
                 eps_rot: float = 0.05,
                 w_theta: float = 0.1,
                 **kwargs):
        super().__init__(**kwargs)
        self.goal = goal
        self.eps_pos = eps_pos
        self.eps_rot = eps_rot
        self.w_theta = w_theta
        self.start_id: Optional[int] = None
        self._next_node_id = 0
        self._next_edge_id = 0
        self._goal_cache: Dict[int, bool] = {}
        self._edges_by_id: Dict[int, MosaicEdge] = {}

    @classmethod
    def for_scenario(cls,
                     scenario: Scenario,
                     config: Optional[SkillsConfig] = None) -> MosaicGraph:
        config = config if config is not None else SkillsConfig()
        return cls(scenario.goal, config.eps_match_pos.value,
                   config.eps_match_rot.value, scenario.params.w_theta)

    def __repr__(self) -> str:
        return f'MosaicGraph(N={self.node_count}, E={self.edge_count})'

    @property
    def node_count(self) -> int:
        return self.number_of_nodes()

    @property
    def edge_count(self) -> int:
        return self.number_of_edges()

    def node(self, node_id: int) -> MosaicNode:
        try:
            return self.nodes[node_id]['data']
        except KeyError:
            msg = f'Unknown node id {node_id}.'
            _LOGGER.error(msg)
            raise GraphValidationError(msg) from None

    def edge(self, edge_id: int) -> MosaicEdge:
        return self._edges_by_id[edge_id]

    def mosaic_nodes(self) -> List[MosaicNode]:
        """All nodes in id order."""
        return [self.nodes[i]['data'] for i in sorted(self.nodes)]

    def mosaic_edges(self) -> List[MosaicEdge]:
        """All edges in id order."""
        return [self._edges_by_id[i] for i in sorted(self._edges_by_id)]

    def _reject(self, msg: str):
        try:
            raise GraphValidationError(msg)
        except GraphValidationError as e:
            _LOGGER.error(msg, exc_info=True)
            raise e

    def add_mosaic_node(self,
                        kind: NodeKind,
                        trajectory: Trajectory,
                        cost: float,
                        skill: Optional[SkillName] = None,
                        params: Optional[SkillParams] = None,
                        seed: Optional[int] = None) -> int:
        """Insert a node and return its id.

        :raise: :class:`~skillmosaic.exceptions.GraphValidationError` on a
            negative or non-finite cost, a second start node or a start node
            that is not a zero-cost singleton.
        """
        if not math.isfinite(cost) or cost < 0.0:
            self._reject(f'Node cost {cost} must be finite and nonnegative.')
        if kind is NodeKind.START:
            if self.start_id is not None:
                self._reject('The mosaic already has a start node.')
            if cost != 0.0 or len(trajectory) != 1:
                self._reject('The start node is a zero-cost singleton.')
        node_id = self._next_node_id
        self._next_node_id += 1
        self.add_node(node_id,
                      data=MosaicNode(node_id, kind, trajectory, float(cost),
                                      skill, params, seed))
        if kind is NodeKind.START:
            self.start_id = node_id
        _LOGGER.debug(f'Added {kind.value} node {node_id} '
                      f'({skill}, cost {cost:.4f}).')
        return node_id

    def add_mosaic_edge(self, source: int, target: int, skill: SkillName,
                        params: SkillParams, cond0: Condition,
                        cond1: Condition, trajectory: Trajectory,
                        cost: float,
                        seed: Optional[int] = None) -> int:
        """Insert a connector edge and return its id.

        :raise: :class:`~skillmosaic.exceptions.GraphValidationError` when an
            endpoint is missing, the cost is negative or the trajectory does
            not continue the source node and lead into the target node.
        """
        if source not in self.nodes or target not in self.nodes:
            self._reject(f'Edge endpoints {source}->{target} must exist.')
        if not math.isfinite(cost) or cost < 0.0:
            self._reject(f'Edge cost {cost} must be finite and nonnegative.')
        if not states_match(self.node(source).terminal, trajectory.initial,
                            self.eps_pos, self.eps_rot):
            self._reject(f'Edge {source}->{target} does not start at the '
                         f'terminal state of node {source}.')
        if not states_match(trajectory.terminal, self.node(target).initial,
                            self.eps_pos, self.eps_rot):
            self._reject(f'Edge {source}->{target} does not end at the '
                         f'initial state of node {target}.')
        edge_id = self._next_edge_id
        self._next_edge_id += 1
        edge = MosaicEdge(edge_id, source, target, skill, params, cond0, cond1,
                          trajectory, float(cost), seed)
        self._edges_by_id[edge_id] = edge
        self.add_edge(source, target, key=edge_id, data=edge)
        _LOGGER.debug(f'Added edge {edge_id}: {source}->{target} ({skill}, '
                      f'cost {cost:.4f}).')
        return edge_id

    def is_goal_node(self, node_id: int) -> bool:
        """Whether the node's terminal state satisfies the goal, cached."""
        if self.goal is None:
            return False
        if node_id not in self._goal_cache:
            self._goal_cache[node_id] = goal_satisfied(
                self.goal,
                self.node(node_id).terminal)
        return self._goal_cache[node_id]

    def goal_nodes(self) -> List[int]:
        return [i for i in sorted(self.nodes) if self.is_goal_node(i)]

    def reachable_sets(self) -> Tuple[Set[int], Set[int]]:
        """Nodes reachable from the start and nodes reaching a goal node."""
        from_start: Set[int] = set()
        if self.start_id is not None:
            from_start = nx.descendants(self, self.start_id) | {self.start_id}
        to_goal: Set[int] = set()
        for goal_id in self.goal_nodes():
            if goal_id not in to_goal:
                to_goal |= nx.ancestors(self, goal_id) | {goal_id}
        return from_start, to_goal

    def has_path(self) -> bool:
        """Whether a directed path leads from the start to a goal node."""
        if self.start_id is None:
            return False
        from_start, _ = self.reachable_sets()
        return any(self.is_goal_node(i) for i in from_start)

    def connected(self, source: int, target: int) -> bool:
        return self.has_edge(source, target)

    def cheapest_edge(self, source: int, target: int) -> MosaicEdge:
        """Least-cost parallel edge, smallest id on ties."""
        edges = [d['data'] for d in self.get_edge_data(source, target).values()]
        return min(edges, key=lambda e: (e.cost, e.id))

    def _path_weight(self, u: int, v: int, parallel: dict) -> float:
        edge = min(d['data'].cost for d in parallel.values())
        return edge + self.node(v).cost

    def shortest_path(self) -> List[PathStep]:
        """Least-cost path from the start to the cheapest goal node.

        Path cost sums node costs and edge costs; between two nodes only the
        cheapest parallel edge counts. Goal ties go to the smaller node id.

        :raise: :class:`~skillmosaic.exceptions.PathNotFoundError` when no
            goal node is reachable.
        """
        if self.start_id is None:
            msg = 'The mosaic has no start node.'
            _LOGGER.error(msg)
            raise PathNotFoundError(msg)
        start = self.start_id
        dist, paths = nx.single_source_dijkstra(self,
                                                start,
                                                weight=self._path_weight)
        reached = [(dist[n], n) for n in self.goal_nodes() if n in dist]
        if not reached:
            msg = 'No path from the start node to a goal node.'
            try:
                raise PathNotFoundError(msg)
            except PathNotFoundError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e
        _, goal_id = min(reached)
        nodes = paths[goal_id]
        path = [PathStep(self.node(start))]
        for u, v in zip(nodes, nodes[1:]):
            path.append(PathStep(self.node(v), self.cheapest_edge(u, v)))
        return path

    def nearest_neighbors(self,
                          node_id: int,
                          k: int,
                          penalties: Optional[PairPenaltyTable] = None,
                          gamma: float = 0.5,
                          incoming: bool = False) -> List[int]:
        """Rank connection partners of a node by penalised distance.

        Outgoing (default): candidates ``o`` ranked by the distance from this
        node's terminal state to ``o``'s initial state, times ``1 + gamma *
        failures(self, o)``. Incoming: distance from ``o``'s terminal state to
        this node's initial state, penalty of ``(o, self)``. Pairs already
        joined by an edge in that direction are skipped, as are start nodes
        as targets and terminal nodes as sources. Ties go to the smaller id.

        :return: At most ``k`` node ids.
        """
        if k < 1:
            return []
        penalties = penalties if penalties is not None else PairPenaltyTable()
        here = self.node(node_id)
        ranked = []
        for other_id in self.nodes:
            if other_id == node_id:
                continue
            other = self.node(other_id)
            if incoming:
                source, target = other_id, node_id
                d = state_distance(other.terminal, here.initial, self.w_theta)
            else:
                source, target = node_id, other_id
                d = state_distance(here.terminal, other.initial, self.w_theta)
            if (self.node(target).kind is NodeKind.START
                    or self.node(source).kind is NodeKind.TERMINAL
                    or self.connected(source, target)):
                continue
            ranked.append((d * penalties.factor(source, target, gamma),
                           other_id))
        ranked.sort()
        return [other_id for _, other_id in ranked[:k]]
