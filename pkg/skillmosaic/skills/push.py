"""The push skill: generator of push motions and connector that pushes one
object onto its target pose."""
from __future__ import annotations

import math
from logging import getLogger
from typing import Optional

import numpy as np

from skillmosaic.skills.core import (SKILL_IDS, Condition, Skill, SkillName,
                                     SkillParams, pick_object, sample_seed)
from skillmosaic.world.geometry import Pose2, wrap_angle
from skillmosaic.world.model import (Rollout, is_valid_state, motion_rollout,
                                     move_gripper, push_poses, simulate_push)
from skillmosaic.world.scenario import Scenario
from skillmosaic.world.state import WorldState, moved_objects

_LOGGER = getLogger(__name__)

CONTEXT_ATTEMPTS = 64


def sample_table_pose(scenario: Scenario, object_id: str,
                      rng: np.random.Generator) -> Pose2:
    """Uniform pose with the reference point on the table; discs keep their
    start heading."""
    spec = scenario.object(object_id)
    table = scenario.table
    x = rng.uniform(table.xmin, table.xmax)
    y = rng.uniform(table.ymin, table.ymax)
    if spec.is_disc:
        theta = scenario.start.pose_of(object_id).theta
    else:
        theta = rng.uniform(-math.pi, math.pi)
    return Pose2(x, y, theta)


class PushSkill(Skill):
    """Quasi-static pushing of light objects.

    As a generator it places the object at a seeded pose (or
    ``params.object_pose``) and pushes it along ``params.direction`` for
    ``params.distance``. As a connector it pushes the single object that
    differs between the conditions straight onto its target.
    """

    skill_id = SKILL_IDS[SkillName.PUSH]

    @property
    def standoff(self) -> float:
        return self.config.push_standoff.value

    def sample_parameters(self, scenario: Scenario,
                          rng: np.random.Generator) -> SkillParams:
        limit = scenario.params.max_push_distance
        return SkillParams(
            skill=SkillName.PUSH,
            seed=sample_seed(rng),
            object_id=pick_object(scenario.pushable_ids, rng),
            direction=wrap_angle(rng.uniform(-math.pi, math.pi)),
            # 1 - U[0, 1) keeps the distance in (0, limit]
            distance=limit * (1.0 - rng.random()),
        )

    def context(self, scenario: Scenario,
                params: SkillParams) -> Optional[WorldState]:
        """The deterministic start state of a generator invocation."""
        rng = params.context_rng()
        for _ in range(CONTEXT_ATTEMPTS):
            pose = params.object_pose or sample_table_pose(
                scenario, params.object_id, rng)
            state = scenario.start.released().with_object(
                params.object_id, pose)
            pre, _ = push_poses(scenario, state, params.object_id,
                                params.direction_vector(), self.standoff)
            state = state.with_gripper(pre)
            if is_valid_state(scenario, state):
                return state
            if params.object_pose is not None:
                break
        return None

    def generate(self, scenario: Scenario, params: SkillParams,
                 seed: int) -> Rollout:
        state = self.context(scenario, params)
        if state is None:
            return Rollout.failed(scenario.start, 'no valid push context',
                                  seed)
        return simulate_push(scenario, state, params.object_id,
                             params.direction_vector(), params.distance,
                             seed, standoff=self.standoff)

    def rollout_from(self, scenario: Scenario, state: WorldState,
                     params: SkillParams, seed: int) -> Rollout:
        if not state.grip_open:
            return Rollout.failed(state, 'grip is closed', seed)
        if not scenario.object(params.object_id).pushable:
            return Rollout.failed(state, f"'{params.object_id}' is heavy",
                                  seed)
        return simulate_push(scenario, state, params.object_id,
                             params.direction_vector(), params.distance,
                             seed, standoff=self.standoff)

    def connect(self, scenario: Scenario, state: WorldState, to: Condition,
                params: SkillParams, seed: int) -> Rollout:
        if not state.grip_open:
            return Rollout.failed(state, 'grip is closed', seed)
        if to.is_goal:
            object_id = to.goal.target
            cx, cy = to.goal.region.center
            target = Pose2(cx, cy, state.pose_of(object_id).theta)
        else:
            moved = moved_objects(state, to.state, to.eps_pos)
            if len(moved) > 1:
                return Rollout.failed(state, 'more than one object differs',
                                      seed)
            object_id = next(iter(moved), None)
            target = to.state.pose_of(object_id) if object_id else None

        segments = []
        current = state
        if object_id is not None:
            if not scenario.object(object_id).pushable:
                return Rollout.failed(state, f"'{object_id}' is heavy", seed)
            origin = current.pose_of(object_id)
            delta = np.array([target.x - origin.x, target.y - origin.y])
            distance = float(np.linalg.norm(delta))
            if distance > scenario.params.max_push_distance:
                return Rollout.failed(
                    state, f'push of {distance:.3f} m exceeds the limit',
                    seed)
            if distance > 1e-9:
                pushed = simulate_push(scenario, current, object_id, delta,
                                       distance, seed,
                                       standoff=self.standoff)
                if not pushed.valid:
                    return pushed
                segments.append(pushed.trajectory.states)
                current = pushed.trajectory.terminal
        if not to.is_goal:
            segments.append(move_gripper(scenario, current, to.state.gripper))
        if not segments:
            segments.append([current])
        return motion_rollout(scenario, segments, seed)
