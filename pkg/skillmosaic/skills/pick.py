"""The pick skill and grasp analysis.

Grasp quality follows the surface normals under the finger pads: with the
fingers closing along ``d_g`` the score is the mean ``|n . d_g|`` over the
boundary points touched on both sides of the grasp line. A side grasp of a
flat object needs the fingers to wrap its rim, so the part of the footprint
within ``finger_depth`` of the rim must overhang the table.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from logging import getLogger
from typing import List, Optional

import numpy as np
from shapely.geometry import Polygon

from skillmosaic.config.planner_config import SkillsConfig
from skillmosaic.exceptions import CapabilityError
from skillmosaic.skills.core import (SKILL_IDS, Skill, SkillName, SkillParams,
                                     pick_object, sample_seed)
from skillmosaic.world.geometry import Pose2, wrap_angle
from skillmosaic.world.model import (Rollout, gripper_violations,
                                     is_valid_state, motion_rollout,
                                     move_gripper)
from skillmosaic.world.objects import ObjectSpec
from skillmosaic.world.scenario import Scenario
from skillmosaic.world.state import WorldState

_LOGGER = getLogger(__name__)

OVERHANG_AREA_TOLERANCE = 1e-9
CONTEXT_ATTEMPTS = 64
STRIP_HALF_LENGTH = 10.0


def grasp_score(spec: ObjectSpec,
                pose: Pose2,
                angle: float,
                finger_half_width: float = 0.01,
                samples: int = 32) -> float:
    """Antipodal quality of a grasp approaching along ``angle``.

    :param spec: The object, must be graspable.
    :param pose: Object pose.
    :param angle: Approach heading; the fingers close perpendicular to it.
    :param finger_half_width: Half width of the pad band around the grasp
        line.
    :param samples: Boundary samples, split evenly over the two fingers.
    :return: A score in [0, 1]; 1 for discs at any angle.
    :raise: :class:`~skillmosaic.exceptions.CapabilityError` for
        non-graspable objects.
    """
    if not spec.graspable:
        msg = f"Object '{spec.id}' is not graspable."
        try:
            raise CapabilityError(msg)
        except CapabilityError as e:
            _LOGGER.error(msg, exc_info=True)
            raise e
    approach = np.array([math.cos(angle), math.sin(angle)])
    closing = np.array([-approach[1], approach[0]])
    center = np.array([pose.x, pose.y])
    per_side = max(1, samples // 2)
    values = []
    for side in (1.0, -1.0):
        for j in range(per_side):
            offset = finger_half_width * (2.0 * (j + 0.5) / per_side - 1.0)
            hit = spec.boundary_exit(pose, center + offset * approach,
                                     side * closing)
            if hit is None:
                continue
            normal = hit[1]
            if spec.is_disc:
                # a smooth rim touches the flat pad at its support point
                normal = side * closing
            values.append(abs(float(normal @ closing)))
    if not values:
        return 0.0
    return float(np.mean(values))


def side_grasp_feasible(scenario: Scenario, spec: ObjectSpec, pose: Pose2,
                        angle: float, finger_depth: float) -> bool:
    """Whether the fingers can wrap the rim met when approaching along
    ``angle``: the rim band of depth ``finger_depth`` must not rest on the
    table."""
    approach = np.array([math.cos(angle), math.sin(angle)])
    closing = np.array([-approach[1], approach[0]])
    rim = spec.support_point(pose, -approach)
    near = rim - STRIP_HALF_LENGTH * approach
    far = rim + finger_depth * approach
    strip = Polygon([
        near - STRIP_HALF_LENGTH * closing, far - STRIP_HALF_LENGTH * closing,
        far + STRIP_HALF_LENGTH * closing, near + STRIP_HALF_LENGTH * closing
    ])
    band = spec.footprint(pose).intersection(strip)
    return band.intersection(
        scenario.table_polygon).area <= OVERHANG_AREA_TOLERANCE


@dataclass(frozen=True)
class Grasp:
    """A selected grasp: approach heading, quality and gripper poses."""

    object_id: str
    angle: float
    score: float
    pregrasp: Pose2
    grasp: Pose2
    retract: Pose2


def grasp_poses(spec: ObjectSpec, pose: Pose2, angle: float,
                config: SkillsConfig) -> List[Pose2]:
    """Pre-grasp, grasp and retract gripper poses for ``angle``."""
    approach = np.array([math.cos(angle), math.sin(angle)])
    if spec.top_graspable:
        contact = np.array([pose.x, pose.y])
    else:
        contact = spec.support_point(pose, -approach)
    pre = contact - config.pregrasp_offset.value * approach
    retract = contact - config.retract_offset.value * approach
    return [
        Pose2(pre[0], pre[1], angle),
        Pose2(contact[0], contact[1], angle),
        Pose2(retract[0], retract[1], angle)
    ]


def select_grasp(scenario: Scenario, state: WorldState, object_id: str,
                 base_angle: float,
                 config: SkillsConfig) -> Optional[Grasp]:
    """Best feasible grasp among ``grasp_candidates`` evenly spaced approach
    headings starting at ``base_angle``; ties go to the earlier candidate.

    :return: The grasp, or ``None`` when no candidate is feasible.
    """
    spec = scenario.object(object_id)
    if not spec.graspable:
        return None
    pose = state.pose_of(object_id)
    n = config.grasp_candidates.value
    best: Optional[Grasp] = None
    for k in range(n):
        angle = wrap_angle(base_angle + 2.0 * math.pi * k / n)
        if not spec.top_graspable and not side_grasp_feasible(
                scenario, spec, pose, angle, config.finger_depth.value):
            continue
        poses = grasp_poses(spec, pose, angle, config)
        if any(gripper_violations(scenario, p) for p in poses):
            continue
        score = grasp_score(spec, pose, angle,
                            config.finger_half_width.value,
                            config.grasp_score_samples.value)
        if best is None or score > best.score:
            best = Grasp(object_id, angle, score, *poses)
    return best


def pick_segments(scenario: Scenario, state: WorldState,
                  grasp: Grasp) -> List[List[WorldState]]:
    """Approach, close and retract; the approach is skipped when the gripper
    already sits at the pre-grasp pose."""
    segments = []
    current = state
    if current.gripper != grasp.pregrasp:
        segments.append(move_gripper(scenario, current, grasp.pregrasp))
        current = segments[-1][-1]
    segments.append(move_gripper(scenario, current, grasp.grasp))
    closed = segments[-1][-1].grasped(grasp.object_id)
    segments.append([closed])
    segments.append(move_gripper(scenario, closed, grasp.retract))
    return segments


class PickSkill(Skill):
    """Grasping of graspable objects.

    The generator places the object near a table edge (seeded overhang, or
    ``params.object_pose``), selects the best feasible grasp and returns the
    pre-grasp, grasp and retract motion ending with the object held.
    """

    skill_id = SKILL_IDS[SkillName.PICK]

    def sample_parameters(self, scenario: Scenario,
                          rng: np.random.Generator) -> SkillParams:
        return SkillParams(
            skill=SkillName.PICK,
            seed=sample_seed(rng),
            object_id=pick_object(scenario.graspable_ids, rng),
            grasp_angle=wrap_angle(rng.uniform(-math.pi, math.pi)),
        )

    def _edge_pose(self, scenario: Scenario, spec: ObjectSpec,
                   rng: np.random.Generator) -> Pose2:
        table = scenario.table
        r = spec.bounding_radius
        side = int(rng.integers(4))
        overhang = rng.uniform(0.0, 0.9 * r)
        inset = r - overhang
        if side in (0, 1):
            y = rng.uniform(table.ymin + r, table.ymax - r)
            x = table.xmax - inset if side == 0 else table.xmin + inset
        else:
            x = rng.uniform(table.xmin + r, table.xmax - r)
            y = table.ymax - inset if side == 2 else table.ymin + inset
        if spec.is_disc:
            theta = scenario.start.pose_of(spec.id).theta
        else:
            theta = rng.uniform(-math.pi, math.pi)
        return Pose2(x, y, theta)

    def context(self, scenario: Scenario,
                params: SkillParams) -> Optional[WorldState]:
        """Deterministic start state with the object placed, gripper at the
        start pose."""
        spec = scenario.object(params.object_id)
        rng = params.context_rng()
        for _ in range(CONTEXT_ATTEMPTS):
            pose = params.object_pose or self._edge_pose(scenario, spec, rng)
            state = scenario.start.released().with_object(spec.id, pose)
            if is_valid_state(scenario, state):
                return state
            if params.object_pose is not None:
                break
        return None

    def generate(self, scenario: Scenario, params: SkillParams,
                 seed: int) -> Rollout:
        state = self.context(scenario, params)
        if state is None:
            return Rollout.failed(scenario.start, 'no valid pick context',
                                  seed)
        grasp = select_grasp(scenario, state, params.object_id,
                             params.grasp_angle, self.config)
        if grasp is None:
            return Rollout.failed(state, 'no feasible grasp', seed)
        start = state.with_gripper(grasp.pregrasp)
        return motion_rollout(scenario, pick_segments(scenario, start, grasp),
                              seed)

    def rollout_from(self, scenario: Scenario, state: WorldState,
                     params: SkillParams, seed: int) -> Rollout:
        if not state.grip_open:
            return Rollout.failed(state, 'grip is closed', seed)
        grasp = select_grasp(scenario, state, params.object_id,
                             params.grasp_angle, self.config)
        if grasp is None:
            return Rollout.failed(state, 'no feasible grasp', seed)
        return motion_rollout(scenario, pick_segments(scenario, state, grasp),
                              seed)
