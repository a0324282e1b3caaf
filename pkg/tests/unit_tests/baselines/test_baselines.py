import math

import numpy as np
import pytest

from skillmosaic.baselines import (CemPlanner, IncrementalRoadmapPlanner,
                                   RoadmapPlanner, SkillsAsOptionsPlanner,
                                   select_elites)
from skillmosaic.baselines.cem import (MIN_STD, SequenceDistribution,
                                      goal_progress)
from skillmosaic.config.planner_config import (CemConfig, PlanBudget,
                                               RoadmapConfig, SkillsConfig,
                                               WorldConfig)
from skillmosaic.exceptions import PlannerError
from skillmosaic.mosaic.plan import (FailureReport, Plan, StepMode, WorkClock,
                                     validate_plan)
from skillmosaic.skills import SkillLibrary, SkillName
from skillmosaic.world.geometry import Pose2
from skillmosaic.world.objects import disc
from skillmosaic.world.scenario import GoalSpec, Rect, Scenario
from skillmosaic.world.state import WorldState

TABLE = Rect(-0.5, -0.4, 0.5, 0.4)
BIN = Rect(0.6, -0.15, 0.9, 0.15)

SKILLS = ['push', 'rearrange', 'transport']
PLANNERS = [
    SkillsAsOptionsPlanner, CemPlanner, RoadmapPlanner,
    IncrementalRoadmapPlanner
]


def _library():
    return SkillLibrary.default(SkillsConfig(batch_size=2), SKILLS)


@pytest.fixture
def near_goal(make_puck):
    return make_puck(puck_x=0.0,
                     world=WorldConfig.create({'push_noise': False}))


@pytest.fixture
def plate_at_edge() -> Scenario:
    """A plate overhanging the right table edge, next to the bin."""
    start = WorldState(Pose2(0.0, -0.3, math.pi / 2),
                       {'plate': Pose2(0.48, 0.0)})
    return Scenario('plate-edge', TABLE, BIN, [],
                    [disc('plate', 0.1, top_graspable=False)], start,
                    GoalSpec('plate', BIN))



def test_select_elites():
    assert select_elites([3.0, 1.0, 2.0, 0.0], 0.5) == [0, 2]
    assert select_elites([3.0, 1.0, 2.0, 0.0], 0.3) == [0, 2]
    assert select_elites([1.0, 2.0], 0.01) == [1]
    assert select_elites([1.0, 1.0, 1.0], 0.25) == [0]


def test_goal_progress(make_puck):
    scenario = make_puck()
    assert goal_progress(scenario, scenario.start,
                         10.0) == pytest.approx(-0.3)
    at_goal = make_puck(puck_x=0.2)
    assert goal_progress(at_goal, at_goal.start, 10.0) == pytest.approx(10.0)


def test_sequence_distribution_shapes():
    distribution = SequenceDistribution(3, 2, 0.25)
    actions, values = distribution.sample(np.random.default_rng(0))
    assert actions.shape == (2, )
    assert values.shape == (2, 3)
    assert set(actions) <= {0, 1, 2}


def test_sequence_distribution_refit_and_shift():
    distribution = SequenceDistribution(3, 2, 0.25)
    distribution.refit(np.array([[1, 1], [1, 1]]), np.zeros((2, 2, 3)), 1.0)
    assert distribution.probs[:, 1] == pytest.approx([1.0, 1.0])
    assert distribution.mean == pytest.approx(np.zeros((2, 3)))
    assert distribution.std == pytest.approx(np.full((2, 3), MIN_STD))
    distribution.shift()
    assert distribution.probs[0] == pytest.approx([0.0, 1.0, 0.0])
    assert distribution.probs[1] == pytest.approx([1 / 3] * 3)
    assert distribution.std[1][0] == pytest.approx(np.pi)


def test_cem_actions(scenario):
    planner = CemPlanner(scenario, _library())
    modes = [(a.skill.name, a.mode) for a in planner.actions]
    assert modes == [
        (SkillName.PUSH, StepMode.FROM_STATE),
        (SkillName.PUSH, StepMode.CONNECT),
        (SkillName.REARRANGE, StepMode.CONNECT),
        (SkillName.TRANSPORT, StepMode.CONNECT),
    ]
    assert all(a.object_id == 'puck' for a in planner.actions)


@pytest.mark.parametrize('planner_cls', PLANNERS)
def test_baselines_need_a_generator(planner_cls, scenario):
    with pytest.raises(PlannerError):
        planner_cls(scenario, SkillLibrary.default(names=['transport']))


@pytest.mark.parametrize('planner_cls', PLANNERS)
def test_zero_budget_fails(planner_cls, scenario):
    result = planner_cls(scenario, _library(),
                         PlanBudget(max_iterations=0)).plan()
    assert isinstance(result, FailureReport)
    assert result.reason == 'iteration budget exhausted'
    assert result.iterations == 0
    assert result.planner == planner_cls.name


@pytest.mark.parametrize('planner_cls', PLANNERS)
def test_start_at_goal_gives_empty_plan(planner_cls, make_puck):
    scenario = make_puck(puck_x=0.2)
    result = planner_cls(scenario, _library()).plan()
    assert isinstance(result, Plan)
    assert result.length == 0
    assert result.iterations == 0


@pytest.mark.parametrize('planner_cls', PLANNERS)
def test_budget_is_respected(planner_cls, near_goal):
    library = _library()
    result = planner_cls(near_goal, library, PlanBudget(max_iterations=25),
                         clock=WorkClock(library)).plan()
    assert result.iterations <= 25
    assert result.rollouts == library.rollouts
    if isinstance(result, Plan):
        assert validate_plan(near_goal, result, _library())
        assert result.total_cost == pytest.approx(
            sum(s.cost for s in result.steps))


@pytest.mark.parametrize('planner_cls', PLANNERS)
def test_baselines_are_reproducible(planner_cls, near_goal):

    def run():
        library = _library()
        return planner_cls(near_goal,
                           library,
                           PlanBudget(max_iterations=40),
                           seed=7,
                           clock=WorkClock(library)).plan().to_dict()

    assert run() == run()


def test_roadmap_construction_adds_generated_nodes(near_goal):
    library = _library()
    planner = RoadmapPlanner(near_goal,
                             library,
                             PlanBudget(max_iterations=500),
                             RoadmapConfig(size=4, k=2),
                             clock=WorkClock(library))
    planner.construct()
    assert planner.graph.start_id is None
    assert planner.graph.node_count <= 4
    assert planner.iterations >= 4


def test_incremental_roadmap_with_empty_rounds_gives_up(make_puck):
    library = SkillLibrary.default(SkillsConfig(batch_size=1), ['push'])
    far = make_puck(world=WorldConfig.create({'push_noise': False}))
    result = IncrementalRoadmapPlanner(far,
                                       library,
                                       PlanBudget(max_iterations=10000),
                                       RoadmapConfig(size=0, k=1),
                                       clock=WorkClock(library)).plan()
    assert isinstance(result, FailureReport)
    assert result.reason == 'roadmap disconnected'
    assert result.graph.node_count == 1


def test_incremental_roadmap_without_rounds_pushes_straight_in(near_goal):
    library = SkillLibrary.default(SkillsConfig(batch_size=1), ['push'])
    result = IncrementalRoadmapPlanner(near_goal,
                                       library,
                                       PlanBudget(max_iterations=10000),
                                       RoadmapConfig(size=0, k=1),
                                       clock=WorkClock(library)).plan()
    assert isinstance(result, Plan)
    assert result.skills == [SkillName.PUSH]



def test_cem_config_is_used(near_goal):
    planner = CemPlanner(near_goal, _library(),
                         config=CemConfig(population=2, horizon=1))
    assert planner.config.population.value == 2
    assert planner.config.horizon.value == 1


def test_cem_round_limit(make_puck):
    library = SkillLibrary.default(SkillsConfig(batch_size=2), ['push'])
    far = make_puck(world=WorldConfig.create({'push_noise': False}))
    result = CemPlanner(far,
                        library,
                        PlanBudget(max_iterations=10000),
                        CemConfig(population=2, horizon=1, max_rounds=1),
                        clock=WorkClock(library)).plan()
    assert isinstance(result, FailureReport)
    assert result.reason == 'round limit reached'
    assert result.iterations <= 2


@pytest.mark.slow
@pytest.mark.parametrize('planner_cls', PLANNERS)
def test_baselines_solve_an_easy_scenario(planner_cls, near_goal):
    library = _library()
    result = planner_cls(near_goal,
                         library,
                         PlanBudget(max_iterations=5000),
                         seed=3,
                         clock=WorkClock(library)).plan()
    assert isinstance(result, Plan)
    assert result.length >= 1
    assert validate_plan(near_goal, result, _library())


@pytest.mark.parametrize('planner_cls',
                         [RoadmapPlanner, IncrementalRoadmapPlanner])
def test_roadmap_query_reaches_goal_past_closer_nodes(planner_cls, near_goal):
    library = _library()
    planner = planner_cls(near_goal,
                          library,
                          PlanBudget(max_iterations=5000),
                          RoadmapConfig(size=30, k=1),
                          clock=WorkClock(library))
    result = planner.plan()
    assert isinstance(result, Plan)
    assert result.steps[-1].condition.is_goal


def test_options_picks_then_transports(plate_at_edge):
    library = SkillLibrary.default(SkillsConfig(batch_size=2),
                                   ['pick', 'transport'])
    result = SkillsAsOptionsPlanner(plate_at_edge,
                                    library,
                                    PlanBudget(max_iterations=500),
                                    clock=WorkClock(library)).plan()
    assert isinstance(result, Plan)
    assert result.skills == [SkillName.PICK, SkillName.TRANSPORT]
    assert [s.mode for s in result.steps
            ] == [StepMode.FROM_STATE, StepMode.CONNECT]
    assert validate_plan(plate_at_edge, result, library)

