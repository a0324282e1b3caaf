"""Movable objects: shape, mass class and grasp properties."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from logging import getLogger
from typing import Optional, Tuple

import numpy as np
from shapely.geometry import Point, Polygon

from skillmosaic.exceptions import ScenarioError
from skillmosaic.world.geometry import Pose2

_LOGGER = getLogger(__name__)

DISC_SEGMENTS = 32


class ShapeKind(Enum):
    """Footprint family of an object."""

    DISC = 'disc'
    POLYGON = 'polygon'


class MassClass(Enum):
    """Light objects can be pushed, heavy ones cannot."""

    LIGHT = 'light'
    HEAVY = 'heavy'


@dataclass(frozen=True)
class ObjectSpec:
    """A movable object.

    Polygon vertices are given counter-clockwise in the object frame; the
    object frame origin is the reference point used for goal checks.
    """

    id: str
    shape: ShapeKind
    radius: Optional[float] = None
    vertices: Optional[Tuple[Tuple[float, float], ...]] = None
    graspable: bool = True
    mass: MassClass = MassClass.LIGHT
    top_graspable: bool = False
    _local_vertices: np.ndarray = field(default=None,
                                        repr=False,
                                        compare=False)

    def __post_init__(self):
        if isinstance(self.shape, str):
            object.__setattr__(self, 'shape', ShapeKind(self.shape))
        if isinstance(self.mass, str):
            object.__setattr__(self, 'mass', MassClass(self.mass))
        if self.shape is ShapeKind.DISC:
            if self.radius is None or self.radius <= 0:
                msg = f"Disc object '{self.id}' needs a positive radius, got {self.radius}."
                try:
                    raise ScenarioError(msg)
                except ScenarioError as e:
                    _LOGGER.error(msg, exc_info=True)
                    raise e
            return
        vertices = np.asarray(self.vertices if self.vertices else [],
                              dtype=float)
        if vertices.ndim != 2 or len(vertices) < 3 or not _is_convex_ccw(
                vertices):
            msg = f"Polygon object '{self.id}' needs at least 3 convex counter-clockwise vertices."
            try:
                raise ScenarioError(msg)
            except ScenarioError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e
        object.__setattr__(self, 'vertices',
                           tuple((float(x), float(y)) for x, y in vertices))
        object.__setattr__(self, '_local_vertices', vertices)

    @property
    def is_disc(self) -> bool:
        return self.shape is ShapeKind.DISC

    @property
    def pushable(self) -> bool:
        return self.mass is MassClass.LIGHT

    @property
    def bounding_radius(self) -> float:
        """Radius of the smallest origin-centred circle enclosing the
        footprint."""
        if self.is_disc:
            return self.radius
        return float(np.max(np.linalg.norm(self._local_vertices, axis=1)))

    def world_vertices(self, pose: Pose2) -> np.ndarray:
        """Polygon vertices in the world frame, shape (n, 2)."""
        c, s = math.cos(pose.theta), math.sin(pose.theta)
        rot = np.array([[c, -s], [s, c]])
        return self._local_vertices @ rot.T + np.array([pose.x, pose.y])

    def footprint(self, pose: Pose2) -> Polygon:
        """The shapely footprint of the object at ``pose``."""
        if self.is_disc:
            return Point(pose.x, pose.y).buffer(self.radius,
                                                quad_segs=DISC_SEGMENTS)
        return Polygon(self.world_vertices(pose))

    def support_point(self, pose: Pose2,
                      direction: np.ndarray) -> np.ndarray:
        """The footprint point extremal along ``direction`` (unit vector)."""
        if self.is_disc:
            return np.array([pose.x, pose.y]) + self.radius * direction
        vertices = self.world_vertices(pose)
        return vertices[int(np.argmax(vertices @ direction))]

    def boundary_exit(self, pose: Pose2, origin: np.ndarray,
                      direction: np.ndarray
                      ) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        """Where the ray ``origin + t * direction`` (t >= 0) leaves the
        footprint, and the outward normal there.

        :return: ``(point, normal)`` or ``None`` if the ray misses.
        """
        if self.is_disc:
            center = np.array([pose.x, pose.y])
            rel = origin - center
            b = float(rel @ direction)
            c = float(rel @ rel) - self.radius**2
            disc = b * b - c
            if disc < 0.0:
                return None
            t = -b + math.sqrt(disc)
            if t < 0.0:
                return None
            point = origin + t * direction
            return point, (point - center) / self.radius
        vertices = self.world_vertices(pose)
        best = None
        for i in range(len(vertices)):
            p0, p1 = vertices[i], vertices[(i + 1) % len(vertices)]
            edge = p1 - p0
            normal = np.array([edge[1], -edge[0]]) / np.linalg.norm(edge)
            denom = float(direction @ normal)
            if denom <= 1e-12:
                continue
            t = float((p0 - origin) @ normal) / denom
            point = origin + t * direction
            u = float((point - p0) @ edge) / float(edge @ edge)
            if t >= -1e-12 and -1e-9 <= u <= 1.0 + 1e-9:
                if best is None or t > best[0]:
                    best = (t, point, normal)
        if best is None:
            return None
        return best[1], best[2]

    def to_dict(self) -> dict:
        d = {
            'id': self.id,
            'shape': self.shape.value,
            'graspable': self.graspable,
            'mass_class': self.mass.value,
            'top_graspable': self.top_graspable,
        }
        if self.is_disc:
            d['radius'] = self.radius
        else:
            d['vertices'] = [list(v) for v in self.vertices]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> ObjectSpec:
        try:
            return cls(
                id=str(d['id']),
                shape=ShapeKind(d['shape']),
                radius=d.get('radius'),
                vertices=tuple(tuple(v) for v in d['vertices'])
                if d.get('vertices') else None,
                graspable=bool(d.get('graspable', True)),
                mass=MassClass(d.get('mass_class', 'light')),
                top_graspable=bool(d.get('top_graspable', False)),
            )
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, ScenarioError):
                raise e
            msg = f'Malformed object entry {d}: {e}'
            _LOGGER.error(msg, exc_info=True)
            raise ScenarioError(msg) from e


def _is_convex_ccw(vertices: np.ndarray) -> bool:
    n = len(vertices)
    for i in range(n):
        a, b, c = vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if cross <= 0.0:
            return False
    return True


def disc(object_id: str, radius: float, **kwargs) -> ObjectSpec:
    """Shorthand for a disc-shaped :class:`ObjectSpec`."""
    return ObjectSpec(id=object_id,
                      shape=ShapeKind.DISC,
                      radius=radius,
                      **kwargs)


def box(object_id: str, half_x: float, half_y: float,
        **kwargs) -> ObjectSpec:
    """Shorthand for a rectangular :class:`ObjectSpec` centred on its
    frame."""
    vertices = ((-half_x, -half_y), (half_x, -half_y), (half_x, half_y),
                (-half_x, half_y))
    return ObjectSpec(id=object_id,
                      shape=ShapeKind.POLYGON,
                      vertices=vertices,
                      **kwargs)
