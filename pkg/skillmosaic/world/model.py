"""The world model: state validity, goal predicate, gripper motion and the
noisy quasi-static push."""
from __future__ import annotations

import math
from dataclasses import dataclass
from logging import getLogger
from typing import Iterable, List, Optional, Sequence, Set

import numpy as np

from skillmosaic.exceptions import (InputError, ParameterError,
                                    PreconditionError)
from skillmosaic.world import collision
from skillmosaic.world.geometry import (Pose2, angle_difference,
                                        interpolate_screw)
from skillmosaic.world.objects import ObjectSpec
from skillmosaic.world.scenario import GoalSpec, Scenario
from skillmosaic.world.state import Trajectory, WorldState

_LOGGER = getLogger(__name__)

SUPPORT_TOLERANCE = 1e-9
ROTATION_LEVER = 0.15
"""Lever arm (m) converting gripper rotation into arc length when sampling
motions."""


@dataclass(frozen=True)
class Rollout:
    """One simulated execution: its trajectory and whether every sample is a
    valid state."""

    trajectory: Trajectory
    valid: bool
    reason: Optional[str] = None
    seed: Optional[int] = None

    @classmethod
    def failed(cls, state: WorldState, reason: str,
               seed: Optional[int] = None) -> Rollout:
        return cls(Trajectory.point(state), False, reason, seed)


def _check_ids(scenario: Scenario, state: WorldState) -> None:
    if state.object_poses.keys() != set(scenario.object_ids):
        unknown = sorted(set(state.object_poses) - set(scenario.object_ids))
        missing = sorted(set(scenario.object_ids) - set(state.object_poses))
        msg = (f"State does not match scenario '{scenario.name}' objects "
               f'(unknown: {unknown}, missing: {missing}).')
        try:
            raise InputError(msg)
        except InputError as e:
            _LOGGER.error(msg, exc_info=True)
            raise e


def _penetration(spec_a: ObjectSpec, pose_a: Pose2, spec_b: ObjectSpec,
                 pose_b: Pose2) -> float:
    if spec_a.is_disc and spec_b.is_disc:
        return collision.disc_disc((pose_a.x, pose_a.y), spec_a.radius,
                                   (pose_b.x, pose_b.y), spec_b.radius)
    if spec_a.is_disc:
        return collision.disc_polygon((pose_a.x, pose_a.y), spec_a.radius,
                                      spec_b.world_vertices(pose_b))
    if spec_b.is_disc:
        return collision.disc_polygon((pose_b.x, pose_b.y), spec_b.radius,
                                      spec_a.world_vertices(pose_a))
    return collision.polygon_polygon(spec_a.world_vertices(pose_a),
                                     spec_b.world_vertices(pose_b))


def _obstacle_penetration(scenario: Scenario, spec: ObjectSpec,
                          pose: Pose2) -> float:
    depth = -math.inf
    for vertices in scenario.obstacle_vertices:
        if spec.is_disc:
            d = collision.disc_polygon((pose.x, pose.y), spec.radius,
                                       vertices)
        else:
            d = collision.polygon_polygon(spec.world_vertices(pose), vertices)
        depth = max(depth, d)
    return depth


def support_fraction(scenario: Scenario, spec: ObjectSpec,
                     pose: Pose2) -> float:
    """Fraction of the footprint area resting on the table."""
    if spec.is_disc and scenario.table.contains_disc(pose.x, pose.y,
                                                     spec.radius):
        return 1.0
    footprint = spec.footprint(pose)
    return footprint.intersection(
        scenario.table_polygon).area / footprint.area


def in_bin(scenario: Scenario, spec: ObjectSpec, pose: Pose2) -> bool:
    """Whether the whole footprint rests inside the bin."""
    eps = scenario.params.eps_pen
    if spec.is_disc:
        return scenario.bin.contains_disc(pose.x, pose.y, spec.radius - eps)
    vertices = spec.world_vertices(pose)
    b = scenario.bin
    return bool(
        np.all(vertices[:, 0] >= b.xmin - eps)
        and np.all(vertices[:, 0] <= b.xmax + eps)
        and np.all(vertices[:, 1] >= b.ymin - eps)
        and np.all(vertices[:, 1] <= b.ymax + eps))


def gripper_violations(scenario: Scenario, gripper: Pose2) -> List[str]:
    """Reach and obstacle problems of a gripper pose on its own."""
    params = scenario.params
    problems = []
    reach = math.hypot(gripper.x - params.reach_base[0],
                       gripper.y - params.reach_base[1])
    if not params.reach_min <= reach <= params.reach_max:
        problems.append(f'gripper out of reach ({reach:.3f} m)')
    for i, vertices in enumerate(scenario.obstacle_vertices):
        if collision.disc_polygon((gripper.x, gripper.y),
                                  params.gripper_radius,
                                  vertices) > params.eps_pen:
            problems.append(f'gripper penetrates obstacle {i}')
    return problems


def _object_violations(scenario: Scenario, state: WorldState,
                       object_id: str,
                       others: Iterable[str]) -> List[str]:
    params = scenario.params
    spec = scenario.object(object_id)
    pose = state.object_poses[object_id]
    problems = []
    if scenario.obstacle_vertices and _obstacle_penetration(
            scenario, spec, pose) > params.eps_pen:
        problems.append(f"'{object_id}' penetrates a static obstacle")
    if state.held == object_id:
        return problems
    for other in others:
        if other == object_id or other == state.held:
            continue
        if _penetration(spec, pose, scenario.object(other),
                        state.object_poses[other]) > params.eps_pen:
            problems.append(f"'{object_id}' penetrates '{other}'")
    if not in_bin(scenario, spec, pose):
        fraction = support_fraction(scenario, spec, pose)
        if fraction < params.f_sup - SUPPORT_TOLERANCE:
            problems.append(
                f"'{object_id}' unsupported ({fraction:.3f} on table)")
    return problems


def state_violations(scenario: Scenario, state: WorldState) -> List[str]:
    """Every reason why ``state`` is not a valid state of ``scenario``.

    :raise: :class:`~skillmosaic.exceptions.InputError` when the state does
        not place exactly the scenario objects.
    """
    _check_ids(scenario, state)
    problems = gripper_violations(scenario, state.gripper)
    ids = list(state.object_poses)
    for i, object_id in enumerate(ids):
        problems.extend(
            _object_violations(scenario, state, object_id, ids[i + 1:]))
    return problems


def is_valid_state(scenario: Scenario, state: WorldState) -> bool:
    """Reachability, no penetration beyond ``eps_pen`` and support of every
    resting object.

    :raise: :class:`~skillmosaic.exceptions.InputError` on unknown object ids.
    """
    return not state_violations(scenario, state)


def goal_satisfied(goal: GoalSpec, state: WorldState) -> bool:
    """The target reference point lies in the closed goal region.

    :raise: :class:`~skillmosaic.exceptions.InputError` when the target is
        not part of the state.
    """
    pose = state.pose_of(goal.target)
    return goal.region.contains_point(pose.x, pose.y)


def check_motion(scenario: Scenario,
                 states: Sequence[WorldState]) -> Optional[str]:
    """Validate a sampled motion.

    The first sample is checked in full, later samples only for the gripper
    and the objects whose pose or grip status changed since the previous
    sample.

    :return: ``None`` when every sample is valid, else the first reason.
    """
    problems = state_violations(scenario, states[0])
    if problems:
        return f'sample 0: {problems[0]}'
    ids = scenario.object_ids
    for i in range(1, len(states)):
        prev, cur = states[i - 1], states[i]
        if cur.gripper != prev.gripper:
            problems = gripper_violations(scenario, cur.gripper)
            if problems:
                return f'sample {i}: {problems[0]}'
        changed: Set[str] = {
            k
            for k in ids if cur.object_poses[k] != prev.object_poses[k]
        }
        if cur.held != prev.held:
            changed.update(k for k in (cur.held, prev.held) if k is not None)
        for object_id in sorted(changed):
            problems = _object_violations(scenario, cur, object_id, ids)
            if problems:
                return f'sample {i}: {problems[0]}'
    return None


def motion_samples(a: Pose2, b: Pose2, step: float) -> int:
    length = max(a.distance_to(b),
                 angle_difference(a.theta, b.theta) * ROTATION_LEVER)
    return max(1, int(math.ceil(length / step - 1e-9)))


def move_gripper(scenario: Scenario, state: WorldState,
                 target: Pose2) -> List[WorldState]:
    """Screw-interpolated gripper motion to ``target`` at the configured
    arc-length step, carrying a held object.

    :return: The samples, starting with ``state`` and ending exactly at
        ``target``.
    """
    start = state.gripper
    n = motion_samples(start, target, scenario.params.step)
    states = [state]
    for i in range(1, n):
        states.append(state.with_gripper(interpolate_screw(start, target,
                                                           i / n)))
    states.append(state.with_gripper(target))
    return states


def motion_rollout(scenario: Scenario, segments: Sequence[Sequence[WorldState]],
                   seed: Optional[int] = None) -> Rollout:
    """Join motion segments into a checked :class:`Rollout`."""
    trajectory = Trajectory.concatenate(segments)
    reason = check_motion(scenario, trajectory.states)
    return Rollout(trajectory, reason is None, reason, seed)


def _unit(direction: Sequence[float]) -> np.ndarray:
    d = np.asarray(direction, dtype=float)
    norm = float(np.linalg.norm(d))
    if d.shape != (2, ) or not math.isfinite(norm) or norm < 1e-12:
        msg = f'Push direction {direction} must be a non-zero planar vector.'
        try:
            raise ParameterError(msg)
        except ParameterError as e:
            _LOGGER.error(msg, exc_info=True)
            raise e
    return d / norm


def push_poses(scenario: Scenario, state: WorldState, object_id: str,
               direction: Sequence[float],
               standoff: float = 0.03) -> List[Pose2]:
    """Gripper pre-push and contact poses for pushing ``object_id`` along
    ``direction``."""
    d = _unit(direction)
    spec = scenario.object(object_id)
    contact = spec.support_point(state.pose_of(object_id), -d)
    heading = math.atan2(d[1], d[0])
    r = scenario.params.gripper_radius
    touch = contact - r * d
    pre = touch - standoff * d
    return [Pose2(pre[0], pre[1], heading), Pose2(touch[0], touch[1], heading)]


def simulate_push(scenario: Scenario,
                  state: WorldState,
                  object_id: str,
                  direction: Sequence[float],
                  distance: float,
                  seed: int,
                  noise: Optional[bool] = None,
                  standoff: float = 0.03) -> Rollout:
    """Quasi-static push of one light object.

    The gripper approaches the contact in a straight line, then gripper and
    object translate together along ``direction``. The noise offset is drawn
    once from ``seed`` and ramps in linearly, so the final pose is the
    nominal displacement plus N(0, sigma_pos) per axis (and N(0, sigma_rot)
    rotation for non-disc objects).

    :raise: :class:`ParameterError` for a distance outside (0, max] or a
        zero direction; :class:`PreconditionError` when the object is heavy
        or the grip is closed; :class:`InputError` for unknown ids.
    """
    params = scenario.params
    spec = scenario.object(object_id)
    if not (0.0 < distance <= params.max_push_distance):
        msg = f'Push distance {distance} outside (0, {params.max_push_distance}].'
        try:
            raise ParameterError(msg)
        except ParameterError as e:
            _LOGGER.error(msg, exc_info=True)
            raise e
    if not spec.pushable or not state.grip_open:
        msg = (f"Cannot push '{object_id}': " +
               ('object is heavy.' if not spec.pushable else 'grip is closed.'))
        try:
            raise PreconditionError(msg)
        except PreconditionError as e:
            _LOGGER.debug(msg)
            raise e
    d = _unit(direction)
    pre, touch = push_poses(scenario, state, object_id, d, standoff)

    rng = np.random.default_rng(seed)
    offset = rng.normal(0.0, params.sigma_pos, 2)
    spin = rng.normal(0.0, params.sigma_rot)
    if noise is None:
        noise = params.push_noise
    if not noise:
        offset, spin = np.zeros(2), 0.0
    if spec.is_disc:
        spin = 0.0

    approach = move_gripper(scenario, state, pre)
    approach += move_gripper(scenario, approach[-1], touch)[1:]
    contact_state = approach[-1]
    start_pose = contact_state.object_poses[object_id]
    n = max(1, int(math.ceil(distance / params.step - 1e-9)))
    push = [contact_state]
    for i in range(1, n + 1):
        u = i / n
        dx = d[0] * distance * u + u * offset[0]
        dy = d[1] * distance * u + u * offset[1]
        pushed = contact_state.with_object(
            object_id,
            Pose2(start_pose.x + dx, start_pose.y + dy,
                  start_pose.theta + u * spin))
        push.append(pushed.with_gripper(touch.translated(dx, dy)))
    return motion_rollout(scenario, [approach, push], seed)
