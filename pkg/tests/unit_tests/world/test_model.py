import math

import pytest

from skillmosaic.config.planner_config import WorldConfig
from skillmosaic.exceptions import (InputError, ParameterError,
                                    PreconditionError, ScenarioError)
from skillmosaic.world.geometry import Pose2
from skillmosaic.world.model import (goal_satisfied, gripper_violations,
                                     is_valid_state, move_gripper,
                                     simulate_push, state_violations)
from skillmosaic.world.objects import disc
from skillmosaic.world.scenario import GoalSpec, Rect, Scenario
from skillmosaic.world.state import WorldState

TABLE = Rect(-0.5, -0.4, 0.5, 0.4)
BIN = Rect(0.6, -0.15, 0.9, 0.15)


@pytest.fixture
def plate_scenario() -> Scenario:
    start = WorldState(Pose2(0.0, -0.3, math.pi / 2), {'plate': Pose2(0, 0)})
    return Scenario('plate', TABLE, BIN, [], [disc('plate', 0.1)], start,
                    GoalSpec('plate', BIN))


def test_start_state_is_valid(scenario, two_object_scenario):
    assert is_valid_state(scenario, scenario.start)
    assert is_valid_state(two_object_scenario, two_object_scenario.start)


def test_obstacle_overlap_is_invalid(two_object_scenario):
    state = two_object_scenario.start.with_object('puck', Pose2(-0.05, 0.3))
    assert not is_valid_state(two_object_scenario, state)
    assert any('static obstacle' in p
               for p in state_violations(two_object_scenario, state))


def test_gripper_violations_name_reach_and_obstacles(two_object_scenario):
    assert gripper_violations(two_object_scenario, Pose2(0.0, -0.3)) == []
    inside = gripper_violations(two_object_scenario, Pose2(-0.05, 0.3))
    assert inside == ['gripper penetrates obstacle 0']
    far = gripper_violations(two_object_scenario, Pose2(0.0, 1.1))
    assert len(far) == 1 and far[0].startswith('gripper out of reach')


def test_object_overlap_is_invalid(two_object_scenario):
    state = two_object_scenario.start.with_object('puck', Pose2(0.2, 0.13))
    assert not is_valid_state(two_object_scenario, state)


def test_support_fraction_threshold(plate_scenario):
    # half of the disc hangs over the table edge
    at_edge = plate_scenario.start.with_object('plate', Pose2(0.5, 0.0))
    assert is_valid_state(plate_scenario, at_edge)
    further = plate_scenario.start.with_object('plate', Pose2(0.501, 0.0))
    assert not is_valid_state(plate_scenario, further)


def test_object_in_bin_needs_no_support(plate_scenario):
    in_bin = plate_scenario.start.with_object('plate', Pose2(0.75, 0.0))
    assert is_valid_state(plate_scenario, in_bin)


def test_gripper_out_of_reach_is_invalid(scenario):
    state = scenario.start.with_gripper(Pose2(0.0, 1.5))
    assert not is_valid_state(scenario, state)


def test_unknown_object_raises(scenario):
    state = WorldState(Pose2(0, -0.3), {'mug': Pose2(0, 0)})
    with pytest.raises(InputError):
        is_valid_state(scenario, state)


def test_goal_region_is_closed(plate_scenario):
    start = plate_scenario.start
    assert goal_satisfied(plate_scenario.goal,
                          start.with_object('plate', Pose2(0.75, 0.0)))
    assert not goal_satisfied(plate_scenario.goal, start)
    assert goal_satisfied(plate_scenario.goal,
                          start.with_object('plate', Pose2(0.6, 0.15)))


def test_scenario_rejects_invalid_start():
    start = WorldState(Pose2(0.0, -0.3), {'plate': Pose2(0.45, 0.0)})
    with pytest.raises(ScenarioError):
        Scenario('bad', TABLE, BIN, [], [disc('plate', 0.02)],
                 start.with_object('plate', Pose2(0.55, 0.0)),
                 GoalSpec('plate', BIN))


def test_scenario_rejects_overlapping_bin():
    start = WorldState(Pose2(0.0, -0.3), {'plate': Pose2(0, 0)})
    with pytest.raises(ScenarioError):
        Scenario('bad', TABLE, Rect(0.4, -0.1, 0.7, 0.1), [],
                 [disc('plate', 0.02)], start, GoalSpec('plate', BIN))


def test_move_gripper_ends_exactly_at_target(scenario):
    target = Pose2(0.1, -0.2, 0.3)
    samples = move_gripper(scenario, scenario.start, target)
    assert samples[0] == scenario.start
    assert samples[-1].gripper == target
    assert len(samples) > 2


def test_push_without_noise_is_a_translation(make_puck):
    scenario = make_puck(puck_x=0.0,
                         world=WorldConfig.create({'push_noise': False}))
    rollout = simulate_push(scenario, scenario.start, 'puck', [1.0, 0.0], 0.2,
                            seed=7)
    assert rollout.valid
    final = rollout.trajectory.terminal.pose_of('puck')
    assert final.x == pytest.approx(0.2, abs=1e-9)
    assert final.y == pytest.approx(0.0, abs=1e-9)


def test_push_noise_is_seeded(scenario):
    a = simulate_push(scenario, scenario.start, 'puck', [1.0, 0.0], 0.2, 3)
    b = simulate_push(scenario, scenario.start, 'puck', [1.0, 0.0], 0.2, 3)
    c = simulate_push(scenario, scenario.start, 'puck', [1.0, 0.0], 0.2, 4)
    final = a.trajectory.terminal.pose_of('puck')
    assert final == b.trajectory.terminal.pose_of('puck')
    assert final != c.trajectory.terminal.pose_of('puck')
    # discs are rotation symmetric, the noise only shifts them
    assert final.theta == 0.0


def test_push_into_obstacle_is_invalid(two_object_scenario):
    state = two_object_scenario.start.with_object('puck', Pose2(-0.05, 0.1))
    rollout = simulate_push(two_object_scenario, state, 'puck', [0.0, 1.0],
                            0.2, seed=0, noise=False)
    assert not rollout.valid


def test_push_distance_limit(scenario):
    with pytest.raises(ParameterError):
        simulate_push(scenario, scenario.start, 'puck', [1.0, 0.0], 0.3, 0)
    with pytest.raises(ParameterError):
        simulate_push(scenario, scenario.start, 'puck', [0.0, 0.0], 0.1, 0)


def test_push_preconditions(scenario, two_object_scenario):
    with pytest.raises(PreconditionError):
        simulate_push(two_object_scenario, two_object_scenario.start, 'crate',
                      [1.0, 0.0], 0.1, 0)
    with pytest.raises(PreconditionError):
        simulate_push(scenario, scenario.start.grasped('puck'), 'puck',
                      [1.0, 0.0], 0.1, 0)
