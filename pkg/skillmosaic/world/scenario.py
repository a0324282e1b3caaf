"""Scenario description: table, bin, static obstacles, objects, start and
goal, and its JSON document format."""
from __future__ import annotations

import json
from dataclasses import dataclass
from logging import getLogger
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from shapely.geometry import Polygon, box
from shapely.geometry.polygon import orient

from skillmosaic.config.planner_config import WorldConfig
from skillmosaic.exceptions import (ConfigGroupValidationError, InputError,
                                    ScenarioError)
from skillmosaic.world.objects import ObjectSpec
from skillmosaic.world.state import WorldState

_LOGGER = getLogger(__name__)


@dataclass(frozen=True)
class Rect:
    """Axis-aligned closed rectangle."""

    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            msg = f'Degenerate rectangle {self.to_list()}.'
            _LOGGER.error(msg)
            raise ScenarioError(msg)

    def contains_point(self, x: float, y: float) -> bool:
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax

    def contains_disc(self, x: float, y: float, r: float) -> bool:
        return (self.xmin + r <= x <= self.xmax - r
                and self.ymin + r <= y <= self.ymax - r)

    @property
    def center(self) -> Tuple[float, float]:
        return 0.5 * (self.xmin + self.xmax), 0.5 * (self.ymin + self.ymax)

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    def polygon(self) -> Polygon:
        return box(self.xmin, self.ymin, self.xmax, self.ymax)

    def to_list(self) -> List[float]:
        return [self.xmin, self.ymin, self.xmax, self.ymax]

    @classmethod
    def from_list(cls, values: Sequence[float]) -> Rect:
        xmin, ymin, xmax, ymax = (float(v) for v in values)
        return cls(xmin, ymin, xmax, ymax)


@dataclass(frozen=True)
class GoalSpec:
    """Goal predicate: the target object's reference point lies in the
    closed region."""

    target: str
    region: Rect

    def to_dict(self) -> dict:
        return {'target': self.target, 'region': self.region.to_list()}

    @classmethod
    def from_dict(cls, d: dict) -> GoalSpec:
        return cls(str(d['target']), Rect.from_list(d['region']))


@dataclass(frozen=True)
class WorldParams:
    """Plain-float snapshot of a :class:`WorldConfig` for the hot paths."""

    eps_pen: float
    f_sup: float
    sigma_pos: float
    sigma_rot: float
    w_theta: float
    step: float
    max_push_distance: float
    gripper_radius: float
    reach_base: Tuple[float, float]
    reach_min: float
    reach_max: float
    push_noise: bool

    @classmethod
    def from_config(cls, world: WorldConfig) -> WorldParams:
        return cls(
            eps_pen=world.eps_pen.value,
            f_sup=world.f_sup.value,
            sigma_pos=world.sigma_pos.value,
            sigma_rot=world.sigma_rot.value,
            w_theta=world.w_theta.value,
            step=world.step.value,
            max_push_distance=world.max_push_distance.value,
            gripper_radius=world.gripper_radius.value,
            reach_base=(world.reach_base_x.value, world.reach_base_y.value),
            reach_min=world.reach_min.value,
            reach_max=world.reach_max.value,
            push_noise=world.push_noise.value,
        )


class Scenario:
    """A planar tabletop problem instance.

    :param name: Scenario id.
    :param table: The support surface.
    :param bin: The bin next to the table, interior-disjoint from it.
    :param obstacles: Static convex obstacles as vertex lists.
    :param objects: The movable objects.
    :param start: The start state.
    :param goal: The goal predicate.
    :param world: World tolerances, defaults when ``None``.
    :param skills: Skill names available in this scenario, all when ``None``.
    :param overrides: Optional "skills" and "oracle" planner config sections.
    """

    def __init__(
        self,
        name: str,
        table: Rect,
        bin: Rect,
        obstacles: Sequence[Sequence[Sequence[float]]],
        objects: Sequence[ObjectSpec],
        start: WorldState,
        goal: GoalSpec,
        world: Optional[WorldConfig] = None,
        skills: Optional[Sequence[str]] = None,
        overrides: Optional[Dict[str, dict]] = None,
    ):
        self.name = name
        self.table = table
        self.bin = bin
        self.obstacles: Tuple[Tuple[Tuple[float, float], ...], ...] = tuple(
            _counter_clockwise(poly) for poly in obstacles)
        self.objects: Tuple[ObjectSpec, ...] = tuple(
            sorted(objects, key=lambda o: o.id))
        self.start = start
        self.goal = goal
        self.world = world if world is not None else WorldConfig()
        self.skills = tuple(skills) if skills else None
        self.overrides = dict(overrides or {})

        self.params = WorldParams.from_config(self.world)
        self._objects_by_id = {o.id: o for o in self.objects}
        self.table_polygon = table.polygon()
        self.bin_polygon = bin.polygon()
        self.obstacle_polygons: Tuple[Polygon, ...] = tuple(
            Polygon(poly) for poly in self.obstacles)
        self.obstacle_vertices: Tuple[np.ndarray, ...] = tuple(
            np.asarray(poly, dtype=float) for poly in self.obstacles)
        self.validate()

    def __repr__(self) -> str:
        return (f'Scenario(name={self.name!r}, objects={len(self.objects)}, '
                f'obstacles={len(self.obstacles)})')

    @property
    def object_ids(self) -> Tuple[str, ...]:
        return tuple(self._objects_by_id)

    def object(self, object_id: str) -> ObjectSpec:
        try:
            return self._objects_by_id[object_id]
        except KeyError:
            msg = f"Unknown object id '{object_id}' in scenario '{self.name}'."
            _LOGGER.error(msg)
            raise InputError(msg) from None

    @property
    def pushable_ids(self) -> Tuple[str, ...]:
        return tuple(o.id for o in self.objects if o.pushable)

    @property
    def graspable_ids(self) -> Tuple[str, ...]:
        return tuple(o.id for o in self.objects if o.graspable)

    def validate(self) -> None:
        """Check the static layout and the start state.

        :raise: :class:`~skillmosaic.exceptions.ScenarioError`.
        """
        from skillmosaic.world.model import state_violations

        problems = []
        if self.table_polygon.intersection(self.bin_polygon).area > 0.0:
            problems.append('bin and table overlap')
        if self.goal.target not in self._objects_by_id:
            problems.append(f"goal target '{self.goal.target}' is unknown")
        if set(self.start.object_poses) != set(self._objects_by_id):
            problems.append('start state does not place exactly the scenario objects')
        elif not problems:
            problems.extend(state_violations(self, self.start))
        if problems:
            msg = f"Invalid scenario '{self.name}': " + '; '.join(problems)
            try:
                raise ScenarioError(msg)
            except ScenarioError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e

    def to_dict(self) -> dict:
        d = {
            'name': self.name,
            'table': self.table.to_list(),
            'bin': self.bin.to_list(),
            'static_obstacles': [[list(v) for v in poly]
                                 for poly in self.obstacles],
            'objects': [o.to_dict() for o in self.objects],
            'start': self.start.to_dict(),
            'goal': self.goal.to_dict(),
            'world': self.world.to_dict(values_only=True),
        }
        if self.skills:
            d['skills_available'] = list(self.skills)
        d.update(self.overrides)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> Scenario:
        """Build a scenario from its JSON document.

        :raise: :class:`~skillmosaic.exceptions.ScenarioError` when malformed.
        """
        try:
            world = WorldConfig.create(d.get('world'))
            overrides = {k: d[k] for k in ('skills', 'oracle') if k in d}
            return cls(
                name=str(d.get('name', 'scenario')),
                table=Rect.from_list(d['table']),
                bin=Rect.from_list(d['bin']),
                obstacles=d.get('static_obstacles', []),
                objects=[ObjectSpec.from_dict(o) for o in d['objects']],
                start=WorldState.from_dict(d['start']),
                goal=GoalSpec.from_dict(d['goal']),
                world=world,
                skills=d.get('skills_available'),
                overrides=overrides,
            )
        except ScenarioError:
            raise
        except (KeyError, TypeError, ValueError,
                ConfigGroupValidationError) as e:
            msg = f'Malformed scenario document: {e!r}'
            _LOGGER.error(msg, exc_info=True)
            raise ScenarioError(msg) from e


def _counter_clockwise(
        vertices: Sequence[Sequence[float]]) -> Tuple[Tuple[float, float], ...]:
    polygon = orient(Polygon(vertices), 1.0)
    if (not polygon.is_valid or polygon.area <= 0.0
            or polygon.convex_hull.area - polygon.area > 1e-12):
        msg = f'Static obstacle {list(vertices)} is not a convex polygon.'
        _LOGGER.error(msg)
        raise ScenarioError(msg)
    return tuple(
        (float(x), float(y)) for x, y in list(polygon.exterior.coords)[:-1])


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Read a scenario JSON file.

    :raise: :class:`~skillmosaic.exceptions.ScenarioError` when the file is
        not valid JSON or describes an invalid scenario.
    """
    try:
        with open(path, 'r', encoding='utf-8') as file:
            document = json.load(file)
    except json.JSONDecodeError as e:
        msg = f'Scenario file {path} is not valid JSON: {e}'
        _LOGGER.error(msg, exc_info=True)
        raise ScenarioError(msg) from e
    if not isinstance(document, dict):
        msg = f'Scenario file {path} must hold a JSON object.'
        _LOGGER.error(msg)
        raise ScenarioError(msg)
    return Scenario.from_dict(document)


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> None:
    """Write a scenario JSON file with sorted keys."""
    with open(path, 'w', encoding='utf-8') as file:
        json.dump(scenario.to_dict(), file, indent=2, sort_keys=True)
        file.write('\n')
