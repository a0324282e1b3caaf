"""World states, trajectories and the state distance."""
from __future__ import annotations

import math
from dataclasses import dataclass
from logging import getLogger
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from skillmosaic.exceptions import InputError
from skillmosaic.world.geometry import Pose2, angle_difference

_LOGGER = getLogger(__name__)


@dataclass(frozen=True)
class WorldState:
    """Gripper pose, grip status and one pose per movable object.

    ``held`` is ``None`` for an open grip, otherwise the id of the held
    object, whose pose moves rigidly with the gripper.
    """

    gripper: Pose2
    object_poses: Mapping[str, Pose2]
    held: Optional[str] = None

    def __post_init__(self):
        poses = dict(sorted(self.object_poses.items()))
        object.__setattr__(self, 'object_poses', poses)
        if self.held is not None and self.held not in poses:
            msg = f"Held object '{self.held}' has no pose in the state."
            try:
                raise InputError(msg)
            except InputError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e

    def __hash__(self) -> int:
        return hash((self.gripper, tuple(self.object_poses.items()),
                     self.held))

    @property
    def grip_open(self) -> bool:
        return self.held is None

    @property
    def object_ids(self) -> Tuple[str, ...]:
        return tuple(self.object_poses)

    def pose_of(self, object_id: str) -> Pose2:
        try:
            return self.object_poses[object_id]
        except KeyError:
            msg = f"Unknown object id '{object_id}'."
            _LOGGER.error(msg)
            raise InputError(msg) from None

    def with_object(self, object_id: str, pose: Pose2) -> WorldState:
        poses = dict(self.object_poses)
        poses[object_id] = pose
        return WorldState(self.gripper, poses, self.held)

    def with_gripper(self, pose: Pose2) -> WorldState:
        """Move the gripper, carrying the held object rigidly."""
        if self.held is None:
            return WorldState(pose, self.object_poses, None)
        offset = self.gripper.inverse().compose(self.object_poses[self.held])
        poses = dict(self.object_poses)
        poses[self.held] = pose.compose(offset)
        return WorldState(pose, poses, self.held)

    def grasped(self, object_id: str) -> WorldState:
        return WorldState(self.gripper, self.object_poses, object_id)

    def released(self) -> WorldState:
        return WorldState(self.gripper, self.object_poses, None)

    def to_dict(self) -> dict:
        return {
            'gripper': self.gripper.to_list(),
            'grip': self.held,
            'object_poses':
            {k: v.to_list()
             for k, v in self.object_poses.items()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> WorldState:
        return cls(
            gripper=Pose2.from_list(d['gripper']),
            object_poses={
                k: Pose2.from_list(v)
                for k, v in d['object_poses'].items()
            },
            held=d.get('grip'),
        )


def check_same_objects(a: WorldState, b: WorldState) -> None:
    """Raise :class:`InputError` unless both states describe the same
    objects."""
    if a.object_poses.keys() != b.object_poses.keys():
        msg = (f'States describe different objects: {sorted(a.object_poses)} '
               f'vs {sorted(b.object_poses)}.')
        try:
            raise InputError(msg)
        except InputError as e:
            _LOGGER.error(msg, exc_info=True)
            raise e


def state_distance(a: WorldState, b: WorldState, w_theta: float) -> float:
    """``sqrt(sum(dx^2 + dy^2 + w_theta * dtheta^2))`` over the gripper and
    every object, ``dtheta`` the wrapped angle difference.

    Symmetric, zero iff poses coincide, and obeys the triangle inequality.
    """
    check_same_objects(a, b)
    pairs = [(a.gripper, b.gripper)]
    poses_b = b.object_poses
    pairs.extend((pa, poses_b[k]) for k, pa in a.object_poses.items())
    total = 0.0
    for pa, pb in pairs:
        dtheta = angle_difference(pa.theta, pb.theta)
        total += (pa.x - pb.x)**2 + (pa.y - pb.y)**2 + w_theta * dtheta**2
    return math.sqrt(total)


def states_match(a: WorldState, b: WorldState, eps_pos: float,
                 eps_rot: float) -> bool:
    """Per-entity comparison within position and angle tolerances, grip
    status compared exactly."""
    if a.held != b.held or a.object_poses.keys() != b.object_poses.keys():
        return False
    pairs = [(a.gripper, b.gripper)]
    pairs.extend(
        (pa, b.object_poses[k]) for k, pa in a.object_poses.items())
    for pa, pb in pairs:
        if math.hypot(pa.x - pb.x, pa.y - pb.y) > eps_pos:
            return False
        if angle_difference(pa.theta, pb.theta) > eps_rot:
            return False
    return True


class Trajectory:
    """A time-parameterised sequence of world states on t in [0, 1].

    A singleton trajectory holds one state and represents a point.
    """

    def __init__(self,
                 states: Sequence[WorldState],
                 times: Optional[Sequence[float]] = None):
        states = list(states)
        if not states:
            msg = 'A trajectory needs at least one state.'
            _LOGGER.error(msg)
            raise InputError(msg)
        if times is None:
            n = len(states)
            times = [0.0] if n == 1 else [i / (n - 1) for i in range(n)]
        times = [float(t) for t in times]
        if len(times) != len(states) or times[0] != 0.0 or (
                len(times) > 1 and times[-1] != 1.0) or any(
                    t1 <= t0 for t0, t1 in zip(times, times[1:])):
            msg = 'Trajectory times must increase strictly from 0 to 1.'
            _LOGGER.error(msg)
            raise InputError(msg)
        self._states: Tuple[WorldState, ...] = tuple(states)
        self._times: Tuple[float, ...] = tuple(times)

    @property
    def states(self) -> Tuple[WorldState, ...]:
        return self._states

    @property
    def times(self) -> Tuple[float, ...]:
        return self._times

    @property
    def initial(self) -> WorldState:
        return self._states[0]

    @property
    def terminal(self) -> WorldState:
        return self._states[-1]

    def __len__(self) -> int:
        return len(self._states)

    def __iter__(self):
        return iter(self._states)

    def __repr__(self) -> str:
        return f'Trajectory(samples={len(self)})'

    def path_length(self, w_theta: float) -> float:
        return sum(
            state_distance(a, b, w_theta)
            for a, b in zip(self._states, self._states[1:]))

    def object_path(self, object_id: str) -> List[Tuple[float, float]]:
        return [(s.object_poses[object_id].x, s.object_poses[object_id].y)
                for s in self._states]

    def gripper_path(self) -> List[Tuple[float, float]]:
        return [(s.gripper.x, s.gripper.y) for s in self._states]

    @classmethod
    def point(cls, state: WorldState) -> Trajectory:
        return cls([state])

    @classmethod
    def concatenate(cls, segments: Iterable[Sequence[WorldState]]
                    ) -> Trajectory:
        """Join state sequences, dropping a repeated junction state."""
        joined: List[WorldState] = []
        for segment in segments:
            for state in segment:
                if joined and joined[-1] == state:
                    continue
                joined.append(state)
        return cls(joined)


def moved_objects(a: WorldState, b: WorldState,
                  eps_pos: float = 1e-9) -> Dict[str, float]:
    """Objects whose position differs between the states, with the
    displacement."""
    out = {}
    for k, pa in a.object_poses.items():
        d = pa.distance_to(b.object_poses[k])
        if d > eps_pos:
            out[k] = d
    return out
