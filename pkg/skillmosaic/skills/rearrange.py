"""The rearrange skill: moves every object that differs between two
conditions, choosing a push or a pick-and-place per object."""
from __future__ import annotations

from logging import getLogger
from typing import Dict, List

import numpy as np

from skillmosaic.skills.core import (SKILL_IDS, Condition, Skill, SkillName,
                                     SkillParams, pick_object, sample_seed)
from skillmosaic.skills.pick import pick_segments, select_grasp
from skillmosaic.skills.transport import carry_target
from skillmosaic.world.geometry import Pose2, angle_difference
from skillmosaic.world.model import (Rollout, motion_rollout, move_gripper,
                                     simulate_push)
from skillmosaic.world.scenario import Scenario
from skillmosaic.world.state import WorldState

_LOGGER = getLogger(__name__)


def _targets(state: WorldState, to: Condition) -> Dict[str, Pose2]:
    if to.is_goal:
        cx, cy = to.goal.region.center
        theta = state.pose_of(to.goal.target).theta
        return {to.goal.target: Pose2(cx, cy, theta)}
    targets = {}
    for object_id, pose in state.object_poses.items():
        goal = to.state.pose_of(object_id)
        if pose.distance_to(goal) > to.eps_pos or angle_difference(
                pose.theta, goal.theta) > to.eps_rot:
            targets[object_id] = goal
    return targets


class RearrangeSkill(Skill):
    """Connector that rearranges several objects in one trajectory.

    Objects are handled in id order. A pushable object within the push limit
    of its target is pushed straight there; otherwise a graspable object is
    picked, carried and released at its target; anything else fails the
    rollout. The gripper finally moves to the target gripper pose.
    """

    skill_id = SKILL_IDS[SkillName.REARRANGE]

    def sample_parameters(self, scenario: Scenario,
                          rng: np.random.Generator) -> SkillParams:
        return SkillParams(
            skill=SkillName.REARRANGE,
            seed=sample_seed(rng),
            object_id=pick_object(scenario.object_ids, rng),
        )

    def _move_object(self, scenario: Scenario, state: WorldState,
                     object_id: str, target: Pose2, push_seed: int,
                     base_angle: float) -> Rollout:
        spec = scenario.object(object_id)
        origin = state.pose_of(object_id)
        delta = target.position - origin.position
        distance = float(np.linalg.norm(delta))
        if spec.pushable and distance <= scenario.params.max_push_distance:
            if distance <= 1e-9:
                return Rollout.failed(state, f"'{object_id}' only rotated",
                                      push_seed)
            return simulate_push(scenario, state, object_id, delta, distance,
                                 push_seed,
                                 standoff=self.config.push_standoff.value)
        grasp = select_grasp(scenario, state, object_id, base_angle,
                             self.config)
        if grasp is None:
            return Rollout.failed(state,
                                  f"no way to move '{object_id}' to its target",
                                  push_seed)
        segments = pick_segments(scenario, state, grasp)
        holding = segments[-1][-1]
        segments.append(
            move_gripper(scenario, holding, carry_target(holding, target)))
        segments.append([segments[-1][-1].released()])
        return motion_rollout(scenario, segments, push_seed)

    def connect(self, scenario: Scenario, state: WorldState, to: Condition,
                params: SkillParams, seed: int) -> Rollout:
        if not state.grip_open:
            return Rollout.failed(state, 'grip is closed', seed)
        targets = _targets(state, to)
        child_seeds = np.random.SeedSequence(seed).generate_state(
            max(1, len(targets)))
        rng = np.random.default_rng(seed)
        segments: List[List[WorldState]] = []
        current = state
        for i, object_id in enumerate(sorted(targets)):
            moved = self._move_object(scenario, current, object_id,
                                      targets[object_id],
                                      int(child_seeds[i]),
                                      rng.uniform(-np.pi, np.pi))
            if not moved.valid:
                return Rollout(moved.trajectory, False, moved.reason, seed)
            segments.append(moved.trajectory.states)
            current = moved.trajectory.terminal
        if not to.is_goal:
            segments.append(move_gripper(scenario, current, to.state.gripper))
        if not segments:
            segments.append([current])
        return motion_rollout(scenario, segments, seed)
