"""The transport skill: carries the held object to a target and places it."""
from __future__ import annotations

from logging import getLogger
from typing import List, Optional

import numpy as np

from skillmosaic.skills.core import (SKILL_IDS, Condition, Skill, SkillName,
                                     SkillParams, pick_object, sample_seed)
from skillmosaic.world.geometry import Pose2
from skillmosaic.world.model import Rollout, motion_rollout, move_gripper
from skillmosaic.world.scenario import Rect, Scenario
from skillmosaic.world.state import WorldState

_LOGGER = getLogger(__name__)

WAYPOINT_SPREAD = 0.1


def placement_point(region: Rect, radius: float, index: int,
                    rng: np.random.Generator) -> np.ndarray:
    """Center of ``region`` for the first rollout, a uniform point of the
    region shrunk by ``radius`` for the others."""
    cx, cy = region.center
    if index == 0:
        return np.array([cx, cy])
    half_x = max(0.0, region.width / 2.0 - radius)
    half_y = max(0.0, region.height / 2.0 - radius)
    return np.array(
        [cx + rng.uniform(-half_x, half_x), cy + rng.uniform(-half_y, half_y)])


def carry_target(state: WorldState, object_pose: Pose2) -> Pose2:
    """Gripper pose that puts the held object at ``object_pose``."""
    offset = state.gripper.inverse().compose(state.pose_of(state.held))
    return object_pose.compose(offset.inverse())


def carry_segments(scenario: Scenario, state: WorldState, target: Pose2,
                   waypoint: Optional[np.ndarray] = None
                   ) -> List[List[WorldState]]:
    segments = []
    current = state
    if waypoint is not None:
        segments.append(
            move_gripper(scenario, current,
                         Pose2(waypoint[0], waypoint[1], current.gripper.theta)))
        current = segments[-1][-1]
    segments.append(move_gripper(scenario, current, target))
    return segments


class TransportSkill(Skill):
    """Connector moving a grasped object.

    Towards the goal predicate the object is carried over the goal region
    and released; rollout ``i > 0`` uses a seeded placement and a seeded
    lateral waypoint. Towards an equality condition the gripper moves to the
    target gripper pose and releases when the target grip is open.
    """

    skill_id = SKILL_IDS[SkillName.TRANSPORT]

    def sample_parameters(self, scenario: Scenario,
                          rng: np.random.Generator) -> SkillParams:
        return SkillParams(
            skill=SkillName.TRANSPORT,
            seed=sample_seed(rng),
            object_id=pick_object(scenario.graspable_ids, rng),
        )

    def connect(self, scenario: Scenario, state: WorldState, to: Condition,
                params: SkillParams, seed: int) -> Rollout:
        if state.held is None:
            return Rollout.failed(state, 'no object is grasped', seed)
        index = seed - params.seed
        rng = np.random.default_rng(seed)
        if to.is_goal:
            if to.goal.target != state.held:
                return Rollout.failed(
                    state, f"'{to.goal.target}' is not the grasped object",
                    seed)
            held = state.pose_of(state.held)
            point = placement_point(to.goal.region,
                                    scenario.object(state.held).bounding_radius,
                                    index, rng)
            target = carry_target(state, Pose2(point[0], point[1],
                                               held.theta))
            waypoint = None
            if index > 0:
                mid = (state.gripper.position + target.position) / 2.0
                waypoint = mid + rng.normal(0.0, WAYPOINT_SPREAD, 2)
            segments = carry_segments(scenario, state, target, waypoint)
            segments.append([segments[-1][-1].released()])
            return motion_rollout(scenario, segments, seed)

        if to.state.held not in (None, state.held):
            return Rollout.failed(state, 'target holds another object', seed)
        segments = carry_segments(scenario, state, to.state.gripper)
        if to.state.held is None:
            segments.append([segments[-1][-1].released()])
        return motion_rollout(scenario, segments, seed)
