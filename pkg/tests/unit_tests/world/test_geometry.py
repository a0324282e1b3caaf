import math

import numpy as np
import pytest

from skillmosaic.world.geometry import (Pose2, angle_difference,
                                        interpolate_screw, se2_exp, se2_log,
                                        wrap_angle)


def _close(pose: Pose2, x: float, y: float, theta: float, tol=1e-9):
    assert pose.x == pytest.approx(x, abs=tol)
    assert pose.y == pytest.approx(y, abs=tol)
    assert angle_difference(pose.theta, theta) == pytest.approx(0.0, abs=tol)


def test_wrap_angle_range():
    assert wrap_angle(2 * math.pi + 0.5) == pytest.approx(0.5)
    assert wrap_angle(-math.pi) == pytest.approx(math.pi)
    assert wrap_angle(0.5) == 0.5
    assert angle_difference(math.pi - 0.1, -math.pi + 0.1) == pytest.approx(
        0.2)


def test_compose_with_inverse_is_identity():
    pose = Pose2(0.3, -0.2, 1.1)
    _close(pose.compose(pose.inverse()), 0.0, 0.0, 0.0)
    _close(pose.inverse().compose(pose), 0.0, 0.0, 0.0)


def test_exp_inverts_log():
    pose = Pose2(0.4, 0.1, -2.5)
    _close(se2_exp(*se2_log(pose)), pose.x, pose.y, pose.theta)


def test_screw_pure_translation_midpoint():
    _close(interpolate_screw(Pose2.identity(), Pose2(2, 0, 0), 0.5), 1, 0, 0)


def test_screw_pure_rotation_midpoint():
    _close(interpolate_screw(Pose2.identity(), Pose2(0, 0, math.pi), 0.5), 0,
           0, math.pi / 2)


def test_screw_follows_arc_about_screw_center():
    _close(interpolate_screw(Pose2.identity(), Pose2(2, 0, math.pi), 0.5), 1,
           -1, math.pi / 2)


def test_screw_endpoints_are_exact():
    a, b = Pose2(0.1, 0.2, 0.3), Pose2(-0.4, 0.5, -1.0)
    assert interpolate_screw(a, b, 0.0) == a
    _close(interpolate_screw(a, b, 1.0), b.x, b.y, b.theta)



def _random_pairs(n: int = 1000):
    rng = np.random.default_rng(11)
    for i in range(n):
        x0, y0, x1, y1 = rng.uniform(-1.0, 1.0, 4)
        t0 = rng.uniform(-math.pi, math.pi)
        # every fourth pair is a pure translation
        t1 = t0 if i % 4 == 0 else rng.uniform(-math.pi, math.pi)
        yield Pose2(x0, y0, t0), Pose2(x1, y1, t1)


def test_screw_endpoints_over_random_pairs():
    for a, b in _random_pairs():
        assert interpolate_screw(a, b, 0.0) == a
        _close(interpolate_screw(a, b, 1.0), b.x, b.y, b.theta, tol=1e-9)


def test_screw_restricted_to_prefix_is_rescaled():
    rng = np.random.default_rng(12)
    for a, b in _random_pairs():
        t = rng.uniform(0.05, 1.0)
        s = t * rng.uniform(0.0, 1.0)
        direct = interpolate_screw(a, b, s)
        via = interpolate_screw(a, interpolate_screw(a, b, t), s / t)
        _close(via, direct.x, direct.y, direct.theta, tol=1e-7)
