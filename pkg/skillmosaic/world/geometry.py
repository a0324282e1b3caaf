"""Planar rigid-body poses and SE(2) screw interpolation."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

TWO_PI = 2.0 * math.pi
_SMALL_ANGLE = 1e-6


def wrap_angle(theta: float) -> float:
    """Map an angle into (-pi, pi]."""
    wrapped = math.remainder(theta, TWO_PI)
    if wrapped <= -math.pi:
        wrapped += TWO_PI
    return wrapped


def angle_difference(a: float, b: float) -> float:
    """Smallest absolute difference between two angles, in [0, pi]."""
    return abs(wrap_angle(a - b))


@dataclass(frozen=True)
class Pose2:
    """A pose in SE(2): position in metres, heading in radians."""

    x: float
    y: float
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'x', float(self.x))
        object.__setattr__(self, 'y', float(self.y))
        object.__setattr__(self, 'theta', wrap_angle(float(self.theta)))

    @property
    def position(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def compose(self, other: Pose2) -> Pose2:
        """Return ``self * other``."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        return Pose2(self.x + c * other.x - s * other.y,
                     self.y + s * other.x + c * other.y,
                     self.theta + other.theta)

    def inverse(self) -> Pose2:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return Pose2(-c * self.x - s * self.y, s * self.x - c * self.y,
                     -self.theta)

    def transform_point(self, point: Iterable[float]) -> Tuple[float, float]:
        """Map a point from the local frame of this pose to the world."""
        px, py = point
        c, s = math.cos(self.theta), math.sin(self.theta)
        return self.x + c * px - s * py, self.y + s * px + c * py

    def translated(self, dx: float, dy: float) -> Pose2:
        return Pose2(self.x + dx, self.y + dy, self.theta)

    def distance_to(self, other: Pose2) -> float:
        """Euclidean distance between the two positions."""
        return math.hypot(self.x - other.x, self.y - other.y)

    def to_list(self) -> list:
        return [self.x, self.y, self.theta]

    @classmethod
    def from_list(cls, values: Iterable[float]) -> Pose2:
        x, y, theta = values
        return cls(x, y, theta)

    @classmethod
    def identity(cls) -> Pose2:
        return cls(0.0, 0.0, 0.0)


def se2_log(pose: Pose2) -> Tuple[float, float, float]:
    """Twist coordinates ``(vx, vy, omega)`` with ``se2_exp(log(p)) == p``."""
    theta = pose.theta
    half = 0.5 * theta
    if abs(theta) < _SMALL_ANGLE:
        a = 1.0 - theta * theta / 12.0
    else:
        a = half * math.cos(half) / math.sin(half)
    vx = a * pose.x + half * pose.y
    vy = -half * pose.x + a * pose.y
    return vx, vy, theta


def se2_exp(vx: float, vy: float, omega: float) -> Pose2:
    """Pose reached by following the twist ``(vx, vy, omega)`` for unit
    time."""
    if abs(omega) < _SMALL_ANGLE:
        sin_term = 1.0 - omega * omega / 6.0
        cos_term = 0.5 * omega - omega**3 / 24.0
    else:
        sin_term = math.sin(omega) / omega
        cos_term = (1.0 - math.cos(omega)) / omega
    return Pose2(sin_term * vx - cos_term * vy, cos_term * vx + sin_term * vy,
                 omega)


def interpolate_screw(a: Pose2, b: Pose2, s: float) -> Pose2:
    """Constant-twist interpolation ``a * exp(s * log(a^-1 * b))``.

    :param a: Start pose, returned exactly for ``s == 0``.
    :param b: End pose.
    :param s: Interpolation parameter in [0, 1].
    """
    if s == 0.0:
        return a
    vx, vy, omega = se2_log(a.inverse().compose(b))
    return a.compose(se2_exp(s * vx, s * vy, s * omega))

