import math

import pytest

from skillmosaic.config.planner_config import (PlannerConfig, SkillsConfig,
                                               WorldConfig)
from skillmosaic.skills.library import SkillLibrary
from skillmosaic.world.geometry import Pose2
from skillmosaic.world.objects import box, disc
from skillmosaic.world.scenario import GoalSpec, Rect, Scenario
from skillmosaic.world.state import WorldState

TABLE = Rect(-0.5, -0.4, 0.5, 0.4)
BIN = Rect(0.6, -0.15, 0.9, 0.15)
GOAL_REGION = Rect(0.1, -0.1, 0.3, 0.1)


def puck_scenario(puck_x: float = -0.2,
                  world: WorldConfig = None,
                  skills=None) -> Scenario:
    """One light disc on an empty table, goal region to its right."""
    start = WorldState(Pose2(-0.3, -0.3, math.pi / 2),
                       {'puck': Pose2(puck_x, 0.0)})
    return Scenario('puck',
                    TABLE,
                    BIN, [], [disc('puck', 0.04)],
                    start,
                    GoalSpec('puck', GOAL_REGION),
                    world=world,
                    skills=skills)


@pytest.fixture
def make_puck():
    return puck_scenario


@pytest.fixture
def scenario() -> Scenario:
    return puck_scenario()


@pytest.fixture
def quiet_scenario() -> Scenario:
    """The puck scenario without push noise."""
    return puck_scenario(world=WorldConfig.create({'push_noise': False}))


@pytest.fixture
def two_object_scenario() -> Scenario:
    """A heavy box next to a light puck, with one static obstacle."""
    start = WorldState(Pose2(0.0, -0.3, math.pi / 2), {
        'puck': Pose2(-0.2, 0.0),
        'crate': Pose2(0.2, 0.2, 0.0)
    })
    return Scenario(
        'two-objects',
        TABLE,
        BIN,
        [[(-0.1, 0.25), (0.0, 0.25), (0.0, 0.35), (-0.1, 0.35)]],
        [disc('puck', 0.04),
         box('crate', 0.05, 0.05, mass='heavy', graspable=False)],
        start,
        GoalSpec('puck', GOAL_REGION),
    )


@pytest.fixture
def library() -> SkillLibrary:
    return SkillLibrary.default(SkillsConfig(batch_size=2))


@pytest.fixture
def planner_config() -> PlannerConfig:
    return PlannerConfig.create({
        'skills': {
            'batch_size': 2
        },
        'budget': {
            'max_iterations': 60
        },
        'cem': {
            'population': 4,
            'horizon': 2
        },
        'roadmap': {
            'size': 6
        },
        'options': {
            'max_successors': 3
        },
    })
