import logging
import math
from collections import Counter

import numpy as np
import pytest

from skillmosaic.config.planner_config import SkillsConfig
from skillmosaic.exceptions import (CapabilityError, InputError,
                                    ParameterError, PlannerError)
from skillmosaic.skills import (Condition, PushSkill, SkillLibrary,
                                SkillName, SkillParams, grasp_score)
from skillmosaic.world.geometry import Pose2
from skillmosaic.world.model import is_valid_state
from skillmosaic.world.objects import box, disc
from skillmosaic.world.scenario import GoalSpec, Rect, Scenario
from skillmosaic.world.state import WorldState

TABLE = Rect(-0.5, -0.4, 0.5, 0.4)
BIN = Rect(0.6, -0.15, 0.9, 0.15)


@pytest.fixture
def plate_scenario() -> Scenario:
    start = WorldState(Pose2(0.0, -0.3, math.pi / 2), {'plate': Pose2(0, 0)})
    return Scenario('plate', TABLE, BIN, [], [disc('plate', 0.1)], start,
                    GoalSpec('plate', BIN))


def test_disc_grasp_score_is_one_at_any_angle():
    plate = disc('plate', 0.1)
    for angle in np.linspace(-math.pi, math.pi, 7):
        assert grasp_score(plate, Pose2(0.2, 0.1), angle) == pytest.approx(1.0)


def test_square_grasp_scores():
    square = box('square', 0.05, 0.05)
    assert grasp_score(square, Pose2(0, 0), 0.0) == pytest.approx(1.0)
    assert grasp_score(square, Pose2(0, 0),
                       math.pi / 4) == pytest.approx(math.sqrt(2) / 2,
                                                     abs=1e-6)


def test_grasp_score_needs_graspable_object():
    with pytest.raises(CapabilityError):
        grasp_score(box('crate', 0.05, 0.05, graspable=False), Pose2(0, 0),
                    0.0)


def test_params_validation():
    with pytest.raises(ParameterError):
        SkillParams(SkillName.PUSH, seed=-1)
    with pytest.raises(ParameterError):
        SkillParams(SkillName.PUSH, seed=0, distance=0.0)
    params = SkillParams(SkillName.PUSH, seed=3, object_id='puck',
                         direction=0.5, distance=0.1)
    assert SkillParams.from_dict(params.to_dict()) == params


def test_sampled_parameters_are_seeded(scenario):
    push = PushSkill()
    a = push.sample_parameters(scenario, np.random.default_rng(11))
    b = push.sample_parameters(scenario, np.random.default_rng(11))
    assert a == b
    assert 0.0 < a.distance <= scenario.params.max_push_distance


def test_library_registration():
    library = SkillLibrary.default(names=['push', 'transport'])
    assert library.names == [SkillName.PUSH, SkillName.TRANSPORT]
    assert [s.name for s in library.generators()] == [SkillName.PUSH]
    assert [s.name for s in library.connectors()
            ] == [SkillName.PUSH, SkillName.TRANSPORT]
    with pytest.raises(PlannerError):
        SkillLibrary([PushSkill(), PushSkill()])
    with pytest.raises(InputError):
        library.get(SkillName.PICK)


def test_generator_role_is_checked(scenario, library):
    transport = library.get(SkillName.TRANSPORT)
    params = SkillParams(SkillName.TRANSPORT, seed=0, object_id='puck')
    with pytest.raises(CapabilityError):
        library.invoke_generator(transport, scenario, params)


def test_connection_must_start_at_equality(scenario, library):
    push = library.get(SkillName.PUSH)
    goal = Condition.goal_of(scenario.goal)
    params = SkillParams(SkillName.PUSH, seed=0)
    with pytest.raises(InputError):
        library.invoke_connector(push, scenario, goal, goal, params)


def test_push_generator_is_deterministic(scenario):
    library = SkillLibrary.default(SkillsConfig(batch_size=10))
    push = library.get(SkillName.PUSH)
    params = SkillParams(SkillName.PUSH, seed=42, object_id='puck',
                         direction=0.3, distance=0.15)
    first = library.invoke_generator(push, scenario, params)
    second = library.invoke_generator(push, scenario, params)
    assert first.valid_flags == second.valid_flags
    assert [r.trajectory.terminal for r in first.rollouts
            ] == [r.trajectory.terminal for r in second.rollouts]
    assert library.rollouts == 20


def test_pick_at_table_edge_ends_holding(plate_scenario, library):
    pick = library.get(SkillName.PICK)
    params = SkillParams(SkillName.PICK, seed=1, object_id='plate',
                         grasp_angle=math.pi, object_pose=Pose2(0.48, 0.0))
    outcome = library.invoke_generator(pick, plate_scenario, params)
    assert outcome.any_valid
    assert outcome.representative.trajectory.terminal.held == 'plate'


def test_pick_at_table_center_is_blocked(plate_scenario, library):
    pick = library.get(SkillName.PICK)
    params = SkillParams(SkillName.PICK, seed=1, object_id='plate',
                         grasp_angle=0.0, object_pose=Pose2(0.0, 0.0))
    outcome = library.invoke_generator(pick, plate_scenario, params)
    assert not outcome.any_valid
    assert outcome.first_failure() == 'no feasible grasp'


def test_transport_needs_a_grasped_object(scenario, library):
    transport = library.get(SkillName.TRANSPORT)
    params = SkillParams(SkillName.TRANSPORT, seed=0, object_id='puck')
    outcome = library.invoke_connector(transport, scenario,
                                       transport.equality(scenario.start),
                                       Condition.goal_of(scenario.goal),
                                       params)
    assert not outcome.any_valid


def test_transport_places_held_object_in_goal(scenario, library):
    transport = library.get(SkillName.TRANSPORT)
    holding = WorldState(Pose2(-0.2, 0.0, 0.0), {'puck': Pose2(-0.2, 0.0)},
                         held='puck')
    params = SkillParams(SkillName.TRANSPORT, seed=5, object_id='puck')
    goal = Condition.goal_of(scenario.goal)
    outcome = library.invoke_connector(transport, scenario,
                                       transport.equality(holding), goal,
                                       params, k=1)
    assert outcome.any_valid
    terminal = outcome.representative.trajectory.terminal
    assert terminal.grip_open
    assert goal.matches(terminal)


def test_push_connector_within_limit(quiet_scenario, library):
    push = library.get(SkillName.PUSH)
    start = quiet_scenario.start
    target = start.with_object('puck', Pose2(-0.1, 0.0))
    params = SkillParams(SkillName.PUSH, seed=0)
    outcome = library.invoke_connector(push, quiet_scenario,
                                       push.equality(start),
                                       push.equality(target), params)
    assert all(outcome.valid_flags)


def test_push_connector_beyond_limit(quiet_scenario, library):
    push = library.get(SkillName.PUSH)
    start = quiet_scenario.start
    target = start.with_object('puck', Pose2(0.2, 0.0))
    params = SkillParams(SkillName.PUSH, seed=0)
    outcome = library.invoke_connector(push, quiet_scenario,
                                       push.equality(start),
                                       push.equality(target), params)
    assert not outcome.any_valid


def test_rearrange_moves_the_differing_object(quiet_scenario, library):
    rearrange = library.get(SkillName.REARRANGE)
    start = quiet_scenario.start
    target = start.with_object('puck', Pose2(-0.1, 0.05))
    params = SkillParams(SkillName.REARRANGE, seed=2)
    outcome = library.invoke_connector(rearrange, quiet_scenario,
                                       rearrange.equality(start),
                                       rearrange.equality(target), params)
    assert outcome.any_valid


@pytest.fixture
def gap_scenario() -> Scenario:
    """A puck in front of a corridor 1 cm wider than itself on each side."""
    walls = [[(-0.05, 0.05), (0.2, 0.05), (0.2, 0.15), (-0.05, 0.15)],
             [(-0.05, -0.15), (0.2, -0.15), (0.2, -0.05), (-0.05, -0.05)]]
    start = WorldState(Pose2(-0.3, -0.3, math.pi / 2),
                       {'puck': Pose2(-0.1, 0.0)})
    return Scenario('gap', TABLE, BIN, walls, [disc('puck', 0.04)], start,
                    GoalSpec('puck', Rect(0.05, -0.05, 0.15, 0.05)))


@pytest.mark.slow
def test_noisy_push_through_gap_succeeds_about_two_thirds(gap_scenario):
    assert is_valid_state(gap_scenario, gap_scenario.start)
    library = SkillLibrary.default(names=['push'])
    push = library.get(SkillName.PUSH)
    start = push.equality(gap_scenario.start)
    goal = Condition.goal_of(gap_scenario.goal)
    successes = 0
    for seed in range(1000):
        params = SkillParams(SkillName.PUSH, seed=seed, object_id='puck')
        outcome = library.invoke_connector(push, gap_scenario, start, goal,
                                           params, k=1)
        successes += outcome.any_valid
    # lateral offset N(0, 0.01) against 0.01 of clearance: about 0.68
    assert 0.6 <= successes / 1000 <= 0.8


def test_push_rollout_with_closed_grip_fails_quietly(scenario, library,
                                                     caplog):
    push = library.get(SkillName.PUSH)
    holding = scenario.start.grasped('puck')
    params = SkillParams(SkillName.PUSH, seed=0, object_id='puck',
                         direction=0.0, distance=0.1)
    with caplog.at_level(logging.DEBUG):
        outcome = library.invoke_from_state(push, scenario, holding, params)
    assert not outcome.any_valid
    assert all(r.reason == 'grip is closed' for r in outcome.rollouts)
    assert not [r for r in caplog.records if r.levelno >= logging.ERROR]


def test_push_parameters_pick_objects_uniformly():
    start = WorldState(Pose2(0.0, -0.3, math.pi / 2), {
        name: Pose2(x, 0.0)
        for name, x in zip('abcd', (-0.3, -0.1, 0.1, 0.3))
    })
    scenario = Scenario('four', TABLE, BIN, [],
                        [disc(name, 0.04) for name in 'abcd'], start,
                        GoalSpec('a', BIN))
    push = PushSkill()
    rng = np.random.default_rng(7)
    draws = [push.sample_parameters(scenario, rng) for _ in range(8000)]
    counts = Counter(p.object_id for p in draws)
    assert set(counts) == set('abcd')
    for count in counts.values():
        assert count / len(draws) == pytest.approx(0.25, abs=0.02)
    limit = scenario.params.max_push_distance
    assert all(0.0 < p.distance <= limit for p in draws)
    assert all(-math.pi <= p.direction <= math.pi for p in draws)
