"""The planner configuration.

Tier 0 groups hold the tunables of one concern (world tolerances, skills,
oracle, budgets, baselines). :class:`PlannerConfig` composes everything a
planner run needs except the world tolerances, which travel with the
scenario as a :class:`WorldConfig`.
"""
from __future__ import annotations

import hashlib
import json
import os
import pathlib
from pathlib import Path
from typing import Optional

from skillmosaic.config import _LIB_CONFIG_ROOT_PATH
from skillmosaic.config.core import ConfigGroup
from skillmosaic.config.groups.validation import NonDecreasingGroup
from skillmosaic.config.item_types.bool_item import BoolItem, BoolProperties
from skillmosaic.config.item_types.float_item import (FloatItem,
                                                      FloatProperties)
from skillmosaic.config.item_types.int_item import IntItem, IntProperties


def _positive(default: float) -> FloatProperties:
    return FloatProperties(allow_null=False,
                           min_val=0.0,
                           inclusive_min=False,
                           default=default)


def _probability(default: float) -> FloatProperties:
    return FloatProperties(allow_null=False,
                           min_val=0.0,
                           inclusive_min=True,
                           max_val=1.0,
                           inclusive_max=True,
                           default=default)


def _count(default: int, min_val: int = 1) -> IntProperties:
    return IntProperties(allow_null=False,
                         min_val=min_val,
                         inclusive_min=True,
                         default=default)


# --- Tier 0 groups


class WorldConfig(ConfigGroup):
    """Tolerances and noise of the planar tabletop world model."""

    def __init__(
        self,
        doc: Optional[str] = None,
        eps_pen: Optional[float] = 1e-6,
        f_sup: Optional[float] = 0.5,
        sigma_pos: Optional[float] = 0.01,
        sigma_rot: Optional[float] = 0.05,
        w_theta: Optional[float] = 0.1,
        step: Optional[float] = 0.01,
        max_push_distance: Optional[float] = 0.25,
        gripper_radius: Optional[float] = 0.01,
        reach_base_x: Optional[float] = 0.0,
        reach_base_y: Optional[float] = -0.6,
        reach_min: Optional[float] = 0.0,
        reach_max: Optional[float] = 1.6,
        push_noise: Optional[bool] = True,
    ):
        self.eps_pen = FloatItem(
            value=eps_pen,
            doc='Maximum tolerated penetration depth between bodies (m)',
            properties=_positive(1e-6))
        self.f_sup = FloatItem(
            value=f_sup,
            doc='Minimum fraction of a resting footprint that must lie on the table',
            properties=FloatProperties(allow_null=False,
                                       min_val=0.0,
                                       inclusive_min=False,
                                       max_val=1.0,
                                       inclusive_max=True,
                                       default=0.5))
        self.sigma_pos = FloatItem(
            value=sigma_pos,
            doc='Standard deviation of the positional push noise (m)',
            properties=FloatProperties(allow_null=False,
                                       min_val=0.0,
                                       inclusive_min=True,
                                       default=0.01))
        self.sigma_rot = FloatItem(
            value=sigma_rot,
            doc='Standard deviation of the rotational push noise (rad)',
            properties=FloatProperties(allow_null=False,
                                       min_val=0.0,
                                       inclusive_min=True,
                                       default=0.05))
        self.w_theta = FloatItem(
            value=w_theta,
            doc='Weight of the angular term of the state distance',
            properties=FloatProperties(allow_null=False,
                                       min_val=0.0,
                                       inclusive_min=True,
                                       default=0.1))
        self.step = FloatItem(
            value=step,
            doc='Arc-length spacing of trajectory samples (m)',
            properties=_positive(0.01))
        self.max_push_distance = FloatItem(
            value=max_push_distance,
            doc='Longest admissible single push (m)',
            properties=_positive(0.25))
        self.gripper_radius = FloatItem(
            value=gripper_radius,
            doc='Radius of the planar gripper body (m)',
            properties=_positive(0.01))
        self.reach_base_x = FloatItem(value=reach_base_x,
                                      doc='Robot base x (m)',
                                      properties=FloatProperties(
                                          allow_null=False, default=0.0))
        self.reach_base_y = FloatItem(value=reach_base_y,
                                      doc='Robot base y (m)',
                                      properties=FloatProperties(
                                          allow_null=False, default=-0.6))
        self.reach_min = FloatItem(
            value=reach_min,
            doc='Inner radius of the reachable annulus (m)',
            properties=FloatProperties(allow_null=False,
                                       min_val=0.0,
                                       inclusive_min=True,
                                       default=0.0))
        self.reach_max = FloatItem(
            value=reach_max,
            doc='Outer radius of the reachable annulus (m)',
            properties=_positive(1.6))
        self.push_noise = BoolItem(
            value=push_noise,
            doc='Apply Gaussian noise to push outcomes',
            properties=BoolProperties(allow_null=False, default=True))
        super().__init__(doc)

    @classmethod
    def create(cls, config_dict: Optional[dict] = None) -> WorldConfig:
        """Build a validated :class:`WorldConfig` from a (partial) dict."""
        world = cls()
        world.set_from_dict(config_dict or {})
        world.raise_if_invalid()
        return world


class SkillsConfig(ConfigGroup):
    """Batch size, matching tolerances, cost weighting and grasp geometry."""

    def __init__(
        self,
        doc: Optional[str] = None,
        batch_size: Optional[int] = 8,
        eps_match_pos: Optional[float] = 0.01,
        eps_match_rot: Optional[float] = 0.05,
        cost_lambda: Optional[float] = 1.0,
        finger_depth: Optional[float] = 0.02,
        finger_half_width: Optional[float] = 0.01,
        grasp_candidates: Optional[int] = 16,
        grasp_score_samples: Optional[int] = 32,
        pregrasp_offset: Optional[float] = 0.05,
        retract_offset: Optional[float] = 0.08,
        push_standoff: Optional[float] = 0.03,
        workers: Optional[int] = 1,
    ):
        self.batch_size = IntItem(
            value=batch_size,
            doc='Number of rollouts K per skill invocation',
            properties=_count(8))
        self.eps_match_pos = FloatItem(
            value=eps_match_pos,
            doc='Positional tolerance of condition matching (m)',
            properties=_positive(0.01))
        self.eps_match_rot = FloatItem(
            value=eps_match_rot,
            doc='Angular tolerance of condition matching (rad)',
            properties=_positive(0.05))
        self.cost_lambda = FloatItem(
            value=cost_lambda,
            doc='Weight of the invalid-rollout fraction in the outcome cost',
            properties=FloatProperties(allow_null=False,
                                       min_val=0.0,
                                       inclusive_min=True,
                                       default=1.0))
        self.finger_depth = FloatItem(
            value=finger_depth,
            doc='How far the fingers wrap around a rim for a side grasp (m)',
            properties=_positive(0.02))
        self.finger_half_width = FloatItem(
            value=finger_half_width,
            doc='Half width of the finger pad band around the grasp line (m)',
            properties=_positive(0.01))
        self.grasp_candidates = IntItem(
            value=grasp_candidates,
            doc='Approach angles evaluated by the grasp selection',
            properties=_count(16))
        self.grasp_score_samples = IntItem(
            value=grasp_score_samples,
            doc='Boundary samples used by the grasp score (split over both fingers)',
            properties=_count(32, min_val=2))
        self.pregrasp_offset = FloatItem(
            value=pregrasp_offset,
            doc='Stand-off of the pre-grasp pose along the approach (m)',
            properties=_positive(0.05))
        self.retract_offset = FloatItem(
            value=retract_offset,
            doc='Distance the gripper retracts after closing (m)',
            properties=_positive(0.08))
        self.push_standoff = FloatItem(
            value=push_standoff,
            doc='Stand-off of the pre-push pose behind the contact (m)',
            properties=_positive(0.03))
        self.workers = IntItem(
            value=workers,
            doc='Threads used to evaluate the rollouts of one invocation',
            properties=_count(1))
        super().__init__(doc)


class OracleConfig(NonDecreasingGroup):
    """Statistical oracle tunables."""

    _ordered_chains = [['p_lb', 'p_ub'], ['p_s', 'p_g', 'p_sg']]

    def __init__(
        self,
        doc: Optional[str] = None,
        alpha: Optional[float] = 0.5,
        p_lb: Optional[float] = 0.1,
        p_ub: Optional[float] = 0.9,
        p_s: Optional[float] = 0.2,
        p_g: Optional[float] = 0.4,
        p_sg: Optional[float] = 0.5,
        p_direct_goal: Optional[float] = 0.2,
        gamma: Optional[float] = 0.5,
        noise: Optional[bool] = True,
        seed: Optional[int] = 0,
    ):
        self.alpha = FloatItem(
            value=alpha,
            doc='Exploitation weight of the skill utility',
            properties=_probability(0.5))
        self.p_lb = FloatItem(
            value=p_lb,
            doc='Lower clamp of the connectors-only threshold',
            properties=_probability(0.1))
        self.p_ub = FloatItem(
            value=p_ub,
            doc='Upper clamp of the connectors-only threshold',
            properties=_probability(0.9))
        self.p_s = FloatItem(value=p_s,
                             doc='Cut-off of the START selection mode',
                             properties=_probability(0.2))
        self.p_g = FloatItem(value=p_g,
                             doc='Cut-off of the GOAL selection mode',
                             properties=_probability(0.4))
        self.p_sg = FloatItem(value=p_sg,
                              doc='Cut-off of the START-GOAL selection mode',
                              properties=_probability(0.5))
        self.p_direct_goal = FloatItem(
            value=p_direct_goal,
            doc='Probability of using the goal predicate as target condition',
            properties=_probability(0.2))
        self.gamma = FloatItem(
            value=gamma,
            doc='Distance inflation per failed connection of a pair',
            properties=FloatProperties(allow_null=False,
                                       min_val=0.0,
                                       inclusive_min=True,
                                       default=0.5))
        self.noise = BoolItem(
            value=noise,
            doc='Add standard normal noise to the skill utility',
            properties=BoolProperties(allow_null=False, default=True))
        self.seed = IntItem(value=seed,
                            doc='Seed of the oracle random generator',
                            properties=_count(0, min_val=0))
        super().__init__(doc)


class PlanBudget(ConfigGroup):
    """Iteration and wall-clock limits of one planner run."""

    def __init__(
        self,
        doc: Optional[str] = None,
        max_iterations: Optional[int] = 10000,
        time_limit: Optional[float] = 60.0,
    ):
        self.max_iterations = IntItem(
            value=max_iterations,
            doc='Maximum skill invocations',
            properties=_count(10000, min_val=0))
        self.time_limit = FloatItem(value=time_limit,
                                    doc='Wall-clock limit (s)',
                                    properties=_positive(60.0))
        super().__init__(doc)


class CemConfig(ConfigGroup):
    """Cross-entropy skill-sequence optimisation."""

    def __init__(
        self,
        doc: Optional[str] = None,
        population: Optional[int] = 32,
        elite_fraction: Optional[float] = 0.25,
        horizon: Optional[int] = 4,
        smoothing: Optional[float] = 0.7,
        goal_bonus: Optional[float] = 10.0,
        max_rounds: Optional[int] = 10000,
    ):
        self.population = IntItem(value=population,
                                  doc='Sequences sampled per round',
                                  properties=_count(32))
        self.elite_fraction = FloatItem(
            value=elite_fraction,
            doc='Fraction of the population refit as elite',
            properties=FloatProperties(allow_null=False,
                                       min_val=0.0,
                                       inclusive_min=False,
                                       max_val=1.0,
                                       inclusive_max=False,
                                       default=0.25))
        self.horizon = IntItem(value=horizon,
                               doc='Skills per sampled sequence',
                               properties=_count(4))
        self.smoothing = FloatItem(
            value=smoothing,
            doc='Weight of the elite estimate in the distribution refit',
            properties=_probability(0.7))
        self.goal_bonus = FloatItem(
            value=goal_bonus,
            doc='Score bonus of sequences reaching the goal',
            properties=FloatProperties(allow_null=False,
                                       min_val=0.0,
                                       inclusive_min=True,
                                       default=10.0))
        self.max_rounds = IntItem(
            value=max_rounds,
            doc='Outer sample-refit rounds before giving up',
            properties=_count(10000))
        super().__init__(doc)


class RoadmapConfig(ConfigGroup):
    """Sampling-based roadmap baselines."""

    def __init__(
        self,
        doc: Optional[str] = None,
        size: Optional[int] = 100,
        k: Optional[int] = 3,
    ):
        self.size = IntItem(value=size,
                            doc='Generator invocations per construction round',
                            properties=_count(100, min_val=0))
        self.k = IntItem(value=k,
                         doc='Nearest neighbours connected per node',
                         properties=_count(3))
        super().__init__(doc)


class OptionsConfig(ConfigGroup):
    """Skills-as-options breadth-first search."""

    def __init__(self,
                 doc: Optional[str] = None,
                 max_successors: Optional[int] = 16):
        self.max_successors = IntItem(
            value=max_successors,
            doc='Sampled successors per (node, skill)',
            properties=_count(16))
        super().__init__(doc)


# --- Tier 1 groups


class PlannerConfig(ConfigGroup):
    """All options to configure a planner run."""

    def __init__(
        self,
        doc: Optional[str] = None,
        skills: Optional[SkillsConfig] = None,
        oracle: Optional[OracleConfig] = None,
        budget: Optional[PlanBudget] = None,
        cem: Optional[CemConfig] = None,
        roadmap: Optional[RoadmapConfig] = None,
        options: Optional[OptionsConfig] = None,
    ):
        self.skills: SkillsConfig = skills if skills else SkillsConfig()
        self.oracle: OracleConfig = oracle if oracle else OracleConfig()
        self.budget: PlanBudget = budget if budget else PlanBudget()
        self.cem: CemConfig = cem if cem else CemConfig()
        self.roadmap: RoadmapConfig = roadmap if roadmap else RoadmapConfig()
        self.options: OptionsConfig = options if options else OptionsConfig()
        super().__init__(doc)

    @classmethod
    def create(cls,
               config_dict: Optional[dict] = None,
               raise_errors: bool = True) -> PlannerConfig:
        """Generate a :class:`PlannerConfig` from a nested dict in the
        format generated by ``to_dict(values_only=True)``.

        :param config_dict: The (partial) nested dict.
        :param raise_errors: Raise on validation failure.
        :return: An instance of :class:`PlannerConfig`.
        """
        config = cls()
        config.set_from_dict(config_dict or {})
        if raise_errors:
            config.raise_if_invalid()
        return config

    @classmethod
    def create_from_yaml(cls, yaml_path: Optional[str] = None) -> PlannerConfig:
        """Generate a :class:`PlannerConfig` from a yaml file, the packaged
        defaults when no path is given."""
        config = cls()
        config.set_from_yaml(
            str(yaml_path) if yaml_path else str(default_planner_config_path()))
        config.raise_if_invalid()
        return config

    def config_hash(self) -> str:
        """A short stable digest of every configured value."""
        payload = json.dumps(self.to_dict(values_only=True), sort_keys=True)
        return hashlib.sha256(payload.encode('utf-8')).hexdigest()[:12]


def default_planner_config_path() -> Path:
    """Return the path.

    Returns: The path to the default_planner_config.yaml as an instance of
        pathlib.Path.
    """
    return pathlib.Path(
        os.path.join(_LIB_CONFIG_ROOT_PATH, '_package_data',
                     'default_planner_config.yaml'))
