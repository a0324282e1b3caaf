"""Seeded generators of the three benchmark scenario families.

Every family asks for the plate to end up in the bin next to the table:

- ``transport``: the plate lies deep on the table and cannot be grasped
  directly, it has to be pushed to an edge first.
- ``clutter``: as transport, plus 3 to 5 static obstacles that leave at least
  one free push corridor to a table edge.
- ``movables``: as clutter, plus a light can that blocks the shortest
  corridor half of the time.
"""
from __future__ import annotations

import math
from logging import getLogger
from typing import List, Optional, Sequence

import numpy as np
from shapely.geometry import LineString, Polygon

from skillmosaic.config.planner_config import SkillsConfig
from skillmosaic.exceptions import InputError
from skillmosaic.skills.pick import grasp_poses, side_grasp_feasible
from skillmosaic.world.geometry import Pose2
from skillmosaic.world.model import gripper_violations
from skillmosaic.world.objects import MassClass, ObjectSpec, disc
from skillmosaic.world.scenario import GoalSpec, Rect, Scenario
from skillmosaic.world.state import WorldState

_LOGGER = getLogger(__name__)

FAMILIES = ('transport', 'clutter', 'movables')

TABLE = Rect(-0.5, -0.4, 0.5, 0.4)
BIN = Rect(0.6, -0.15, 0.9, 0.15)
GRIPPER_START = Pose2(0.0, -0.55, math.pi / 2.0)
PLATE_RADIUS = 0.1
PLATE_RANGE = (0.15, 0.1)
CAN_RADIUS = 0.04
OBSTACLE_HALF_RANGE = (0.03, 0.07)
OBSTACLE_COUNT = (3, 5)
CORRIDOR_DIRECTIONS = 72
GRASP_ANGLES = 360
MAX_ATTEMPTS = 200

_SKILLS = {
    'transport': ('push', 'pick', 'transport'),
    'clutter': ('push', 'pick', 'transport'),
    'movables': ('push', 'pick', 'transport', 'rearrange'),
}


def plate() -> ObjectSpec:
    """A light disc that cannot be grasped from above."""
    return disc('plate', PLATE_RADIUS, graspable=True, top_graspable=False,
                mass=MassClass.LIGHT)


def can() -> ObjectSpec:
    """A small light disc graspable from above."""
    return disc('can', CAN_RADIUS, graspable=True, top_graspable=True,
                mass=MassClass.LIGHT)


def has_direct_grasp(scenario: Scenario,
                     object_id: str = 'plate',
                     config: Optional[SkillsConfig] = None,
                     angles: int = GRASP_ANGLES) -> bool:
    """Exhaustive check over ``angles`` approach headings for a grasp of the
    object in the start state."""
    config = config if config is not None else SkillsConfig()
    spec = scenario.object(object_id)
    if not spec.graspable:
        return False
    pose = scenario.start.pose_of(object_id)
    for i in range(angles):
        angle = 2.0 * math.pi * i / angles
        if not spec.top_graspable and not side_grasp_feasible(
                scenario, spec, pose, angle, config.finger_depth.value):
            continue
        poses = grasp_poses(spec, pose, angle, config)
        if not any(gripper_violations(scenario, p) for p in poses):
            return True
    return False


def _edge_distance(scenario: Scenario, center: np.ndarray,
                   direction: np.ndarray, margin: float) -> float:
    """Push length until ``center`` reaches the table boundary shrunk by
    ``margin``."""
    t = math.inf
    lows = (scenario.table.xmin + margin, scenario.table.ymin + margin)
    highs = (scenario.table.xmax - margin, scenario.table.ymax - margin)
    for axis in range(2):
        if direction[axis] > 1e-12:
            t = min(t, (highs[axis] - center[axis]) / direction[axis])
        elif direction[axis] < -1e-12:
            t = min(t, (lows[axis] - center[axis]) / direction[axis])
    return max(t, 0.0)


def corridor_polygon(scenario: Scenario, object_id: str,
                     direction: float) -> Polygon:
    """Area swept by the object and the pusher behind it when pushed along
    ``direction`` until it overhangs the table edge by half its radius."""
    spec = scenario.object(object_id)
    pose = scenario.start.pose_of(object_id)
    d = np.array([math.cos(direction), math.sin(direction)])
    center = np.array([pose.x, pose.y])
    radius = spec.bounding_radius
    length = _edge_distance(scenario, center, d, 0.5 * radius)
    behind = radius + 2.0 * scenario.params.gripper_radius + 0.03
    line = LineString([center - behind * d, center + length * d])
    return line.buffer(radius + scenario.params.gripper_radius)


def find_push_corridors(scenario: Scenario,
                        object_id: str = 'plate',
                        directions: int = CORRIDOR_DIRECTIONS,
                        ignore: Sequence[str] = ()) -> List[float]:
    """Push directions (radians, ascending) whose corridor to a table edge
    is free of static obstacles and of every other object not in
    ``ignore``."""
    blockers = list(scenario.obstacle_polygons)
    for other in scenario.object_ids:
        if other == object_id or other in ignore:
            continue
        blockers.append(scenario.object(other).footprint(
            scenario.start.pose_of(other)))
    corridors = []
    for i in range(directions):
        angle = 2.0 * math.pi * i / directions
        swept = corridor_polygon(scenario, object_id, angle)
        if not any(swept.intersects(b) for b in blockers):
            corridors.append(angle)
    return corridors


def _corridor_length(scenario: Scenario, object_id: str,
                     direction: float) -> float:
    pose = scenario.start.pose_of(object_id)
    d = np.array([math.cos(direction), math.sin(direction)])
    return _edge_distance(scenario, np.array([pose.x, pose.y]), d,
                          0.5 * scenario.object(object_id).bounding_radius)


def _build(name: str, family: str, objects: Sequence[ObjectSpec],
           poses: dict, obstacles: Sequence) -> Scenario:
    start = WorldState(GRIPPER_START, poses)
    return Scenario(name=name,
                    table=TABLE,
                    bin=BIN,
                    obstacles=obstacles,
                    objects=objects,
                    start=start,
                    goal=GoalSpec('plate', BIN),
                    skills=_SKILLS[family])


def _rectangle(center: np.ndarray, half_x: float, half_y: float) -> list:
    x, y = center
    return [[x - half_x, y - half_y], [x + half_x, y - half_y],
            [x + half_x, y + half_y], [x - half_x, y + half_y]]


def _obstacles(rng: np.random.Generator, plate_pose: Pose2) -> list:
    count = int(rng.integers(OBSTACLE_COUNT[0], OBSTACLE_COUNT[1] + 1))
    obstacles: list = []
    keep_out = Polygon(
        _rectangle(np.array([plate_pose.x, plate_pose.y]),
                   PLATE_RADIUS + 0.05, PLATE_RADIUS + 0.05))
    while len(obstacles) < count:
        half_x, half_y = rng.uniform(*OBSTACLE_HALF_RANGE, size=2)
        center = rng.uniform([TABLE.xmin + half_x, TABLE.ymin + half_y],
                             [TABLE.xmax - half_x, TABLE.ymax - half_y])
        rect = _rectangle(center, half_x, half_y)
        polygon = Polygon(rect)
        if polygon.intersects(keep_out) or any(
                polygon.intersects(Polygon(o)) for o in obstacles):
            continue
        obstacles.append(rect)
    return obstacles


def _free_can_pose(rng: np.random.Generator, scenario: Scenario,
                   poses: dict) -> Pose2:
    while True:
        x, y = rng.uniform([TABLE.xmin + CAN_RADIUS, TABLE.ymin + CAN_RADIUS],
                           [TABLE.xmax - CAN_RADIUS, TABLE.ymax - CAN_RADIUS])
        footprint = can().footprint(Pose2(x, y, 0.0))
        plate_pose = poses['plate']
        if math.hypot(x - plate_pose.x, y - plate_pose.y) < (
                PLATE_RADIUS + CAN_RADIUS + 0.02):
            continue
        if any(footprint.intersects(o) for o in scenario.obstacle_polygons):
            continue
        return Pose2(x, y, 0.0)


def _blocking_can_pose(scenario: Scenario, direction: float) -> Pose2:
    plate_pose = scenario.start.pose_of('plate')
    length = _corridor_length(scenario, 'plate', direction)
    gap = PLATE_RADIUS + CAN_RADIUS + 0.02
    offset = gap + 0.5 * max(length - gap, 0.0)
    return Pose2(plate_pose.x + offset * math.cos(direction),
                 plate_pose.y + offset * math.sin(direction), 0.0)


def _attempt(family: str, name: str, rng: np.random.Generator
             ) -> Optional[Scenario]:
    x = rng.uniform(-PLATE_RANGE[0], PLATE_RANGE[0])
    y = rng.uniform(-PLATE_RANGE[1], PLATE_RANGE[1])
    poses = {'plate': Pose2(x, y, 0.0)}
    obstacles = [] if family == 'transport' else _obstacles(rng, poses['plate'])
    scenario = _build(name, family, [plate()], poses, obstacles)
    if has_direct_grasp(scenario):
        return None
    if family == 'transport':
        return scenario
    corridors = find_push_corridors(scenario)
    if not corridors:
        return None
    if family == 'clutter':
        return scenario
    if rng.random() < 0.5:
        shortest = min(corridors,
                       key=lambda a: _corridor_length(scenario, 'plate', a))
        poses['can'] = _blocking_can_pose(scenario, shortest)
        footprint = can().footprint(poses['can'])
        if any(footprint.intersects(o) for o in scenario.obstacle_polygons):
            return None
    else:
        poses['can'] = _free_can_pose(rng, scenario, poses)
    return _build(name, family, [plate(), can()], poses, obstacles)


def make_scenario(family: str, seed: int) -> Scenario:
    """Generate the scenario of ``family`` for ``seed``.

    Generation retries with the same random stream until the family's
    verification passes, so the result is a pure function of its arguments.

    :raise: :class:`~skillmosaic.exceptions.InputError` for an unknown
        family or a negative seed.
    """
    if family not in FAMILIES:
        msg = f"Unknown scenario family '{family}', expected one of {FAMILIES}."
        try:
            raise InputError(msg)
        except InputError as e:
            _LOGGER.error(msg, exc_info=True)
            raise e
    if seed < 0:
        msg = f'Scenario seeds must be non-negative, got {seed}.'
        _LOGGER.error(msg)
        raise InputError(msg)
    rng = np.random.default_rng([FAMILIES.index(family), seed])
    name = f'{family}-{seed}'
    for attempt in range(MAX_ATTEMPTS):
        scenario = _attempt(family, name, rng)
        if scenario is not None:
            _LOGGER.debug(f'Generated {name} after {attempt + 1} attempts.')
            return scenario
    msg = f'Could not generate a verified {family} scenario for seed {seed}.'
    _LOGGER.error(msg)
    raise InputError(msg)
