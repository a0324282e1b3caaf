"""Line-oriented text snapshots of a mosaic and of plans.

One record per line, tab separated, the last column a JSON payload::

    scene   <scenario json>
    node    <id>  <kind>  <skill|->  <cost>  <json>
    edge    <id>  <source>  <target>  <skill>  <cost>  <json>
    step    <index>  <mode>  <skill>  <cost>  <json>

Node, edge and step payloads carry the parameters, the boundary states and
the sampled planar paths of the gripper and of every object that moves.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from logging import getLogger
from pathlib import Path
from typing import Dict, Iterable, List, Optional, TextIO, Union

from skillmosaic.exceptions import SnapshotParseError
from skillmosaic.mosaic.graph import MosaicGraph
from skillmosaic.mosaic.plan import PlanStep
from skillmosaic.world.scenario import Scenario
from skillmosaic.world.state import Trajectory

_LOGGER = getLogger(__name__)

DECIMALS = 6
_FIELDS = {'scene': 2, 'node': 6, 'edge': 7, 'step': 6}


def _dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(',', ':'))


def _paths(trajectory: Trajectory) -> Dict[str, List[List[float]]]:
    paths = {
        'gripper': [[round(x, DECIMALS), round(y, DECIMALS)]
                    for x, y in trajectory.gripper_path()]
    }
    first = trajectory.initial
    for object_id in first.object_ids:
        path = trajectory.object_path(object_id)
        if any(p != path[0] for p in path):
            paths[object_id] = [[round(x, DECIMALS),
                                 round(y, DECIMALS)] for x, y in path]
    return paths


def _payload(trajectory: Trajectory, params=None) -> dict:
    return {
        'params': params.to_dict() if params is not None else None,
        'initial': trajectory.initial.to_dict(),
        'terminal': trajectory.terminal.to_dict(),
        'paths': _paths(trajectory),
    }


def snapshot_lines(scenario: Scenario,
                   graph: Optional[MosaicGraph] = None,
                   steps: Optional[Iterable[PlanStep]] = None) -> List[str]:
    """Render the snapshot records of a scene, optionally with a graph and
    plan steps."""
    lines = [f'scene\t{_dumps(scenario.to_dict())}']
    if graph is not None:
        for node in graph.mosaic_nodes():
            skill = node.skill.value if node.skill is not None else '-'
            lines.append(
                f'node\t{node.id}\t{node.kind.value}\t{skill}\t'
                f'{node.cost:.6f}\t'
                f'{_dumps(_payload(node.trajectory, node.params))}')
        for edge in graph.mosaic_edges():
            lines.append(
                f'edge\t{edge.id}\t{edge.source}\t{edge.target}\t'
                f'{edge.skill.value}\t{edge.cost:.6f}\t'
                f'{_dumps(_payload(edge.trajectory, edge.params))}')
    for i, step in enumerate(steps or []):
        payload = _payload(step.trajectory, step.params)
        payload['ref'] = step.ref
        lines.append(f'step\t{i}\t{step.mode.value}\t{step.skill.value}\t'
                     f'{step.cost:.6f}\t{_dumps(payload)}')
    return lines


def write_snapshot(path: Union[str, Path, TextIO],
                   scenario: Scenario,
                   graph: Optional[MosaicGraph] = None,
                   steps: Optional[Iterable[PlanStep]] = None) -> None:
    """Write a snapshot to a file path or an open text stream."""
    text = '\n'.join(snapshot_lines(scenario, graph, steps)) + '\n'
    if hasattr(path, 'write'):
        path.write(text)
        return
    Path(path).write_text(text, encoding='utf-8')


@dataclass(frozen=True)
class SnapshotRecord:
    """A parsed node, edge or step record."""

    kind: str
    id: int
    label: str
    """Node kind, or step mode."""
    skill: Optional[str]
    cost: float
    payload: dict
    source: Optional[int] = None
    target: Optional[int] = None


@dataclass
class Snapshot:
    """A parsed snapshot."""

    scene: dict
    nodes: List[SnapshotRecord] = field(default_factory=list)
    edges: List[SnapshotRecord] = field(default_factory=list)
    steps: List[SnapshotRecord] = field(default_factory=list)


def _fail(line_no: int, reason: str):
    msg = f'Malformed snapshot line {line_no}: {reason}'
    try:
        raise SnapshotParseError(msg)
    except SnapshotParseError as e:
        _LOGGER.error(msg, exc_info=True)
        raise e


def parse_snapshot(text: str) -> Snapshot:
    """Parse snapshot text.

    :raise: :class:`~skillmosaic.exceptions.SnapshotParseError` on unknown
        records, wrong field counts, bad numbers, bad JSON or a missing
        scene header.
    """
    snapshot: Optional[Snapshot] = None
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split('\t')
        kind = fields[0]
        if kind not in _FIELDS:
            _fail(line_no, f'unknown record {kind!r}')
        if len(fields) != _FIELDS[kind]:
            _fail(line_no,
                  f'{kind} record needs {_FIELDS[kind]} fields, '
                  f'got {len(fields)}')
        try:
            payload = json.loads(fields[-1])
        except json.JSONDecodeError as e:
            _fail(line_no, f'invalid JSON ({e.msg})')
        if not isinstance(payload, dict):
            _fail(line_no, 'payload must be a JSON object')
        if kind == 'scene':
            if snapshot is not None:
                _fail(line_no, 'second scene record')
            snapshot = Snapshot(scene=payload)
            continue
        if snapshot is None:
            _fail(line_no, 'records before the scene header')
        try:
            if kind == 'node':
                skill = None if fields[3] == '-' else fields[3]
                snapshot.nodes.append(
                    SnapshotRecord('node', int(fields[1]), fields[2], skill,
                                   float(fields[4]), payload))
            elif kind == 'edge':
                snapshot.edges.append(
                    SnapshotRecord('edge', int(fields[1]), 'connect',
                                   fields[4], float(fields[5]), payload,
                                   int(fields[2]), int(fields[3])))
            else:
                snapshot.steps.append(
                    SnapshotRecord('step', int(fields[1]), fields[2],
                                   fields[3], float(fields[4]), payload))
        except ValueError as e:
            _fail(line_no, f'bad number ({e})')
    if snapshot is None:
        _fail(0, 'missing scene record')
    return snapshot


def load_snapshot(path: Union[str, Path]) -> Snapshot:
    return parse_snapshot(Path(path).read_text(encoding='utf-8'))
