import math

import pytest

from skillmosaic.exceptions import InputError
from skillmosaic.world.geometry import Pose2
from skillmosaic.world.state import (Trajectory, WorldState, moved_objects,
                                     state_distance, states_match)


def _state(**objects) -> WorldState:
    return WorldState(Pose2(0.0, 0.0), objects)


def test_identical_states_have_zero_distance():
    a = _state(cup=Pose2(0.1, 0.2, 0.3))
    assert state_distance(a, a, 0.1) == 0.0


def test_translation_distance():
    a = _state(cup=Pose2(0, 0))
    b = _state(cup=Pose2(3, 4))
    assert state_distance(a, b, 0.1) == pytest.approx(5.0)


def test_rotation_distance_is_weighted():
    a = _state(cup=Pose2(0, 0, 0))
    b = _state(cup=Pose2(0, 0, math.pi))
    assert state_distance(a, b, 0.25) == pytest.approx(math.pi / 2)


def test_distance_is_symmetric_and_triangular():
    a = _state(cup=Pose2(0, 0, 0), box=Pose2(1, 1, 0))
    b = _state(cup=Pose2(0.5, 0, 1), box=Pose2(1, 0, 0.2))
    c = _state(cup=Pose2(0.2, 0.7, -2), box=Pose2(0, 1, 3))
    ab = state_distance(a, b, 0.1)
    assert ab == pytest.approx(state_distance(b, a, 0.1))
    assert state_distance(a, c, 0.1) <= ab + state_distance(b, c, 0.1) + 1e-12


def test_distance_rejects_different_objects():
    with pytest.raises(InputError):
        state_distance(_state(cup=Pose2(0, 0)), _state(box=Pose2(0, 0)), 0.1)


def test_held_object_moves_with_gripper():
    state = WorldState(Pose2(0, 0, 0), {'cup': Pose2(0.1, 0, 0)}, held='cup')
    moved = state.with_gripper(Pose2(1, 1, math.pi / 2))
    assert moved.pose_of('cup').x == pytest.approx(1.0)
    assert moved.pose_of('cup').y == pytest.approx(1.1)


def test_held_object_must_exist():
    with pytest.raises(InputError):
        WorldState(Pose2(0, 0), {'cup': Pose2(0, 0)}, held='box')


def test_states_match_within_tolerance():
    a = _state(cup=Pose2(0, 0, 0))
    b = _state(cup=Pose2(0.005, 0, 0.01))
    assert states_match(a, b, 0.01, 0.05)
    assert not states_match(a, b, 0.001, 0.05)
    assert not states_match(a, b.grasped('cup'), 0.01, 0.05)


def test_trajectory_times_and_concatenation():
    a = _state(cup=Pose2(0, 0))
    b = _state(cup=Pose2(1, 0))
    c = _state(cup=Pose2(2, 0))
    trajectory = Trajectory.concatenate([[a, b], [b, c]])
    assert len(trajectory) == 3
    assert trajectory.times == (0.0, 0.5, 1.0)
    assert trajectory.path_length(0.1) == pytest.approx(2.0)
    assert moved_objects(a, c) == {'cup': pytest.approx(2.0)}


def test_trajectory_rejects_bad_times():
    a = _state(cup=Pose2(0, 0))
    with pytest.raises(InputError):
        Trajectory([a, a], times=[0.0, 0.5])
    with pytest.raises(InputError):
        Trajectory([])
