"""Static SVG figures of snapshots.

Scene geometry is drawn first, then one polyline per node (circle marker at
its end), per connector edge (square marker) and per plan step (colour
stepped by step index). Every artist carries an SVG id:
``traj-node-<id>``, ``marker-node-<id>``, ``traj-edge-<id>``,
``marker-edge-<id>`` and ``step-<index>``.
"""
from __future__ import annotations

import math
from logging import getLogger
from pathlib import Path
from typing import List, Optional, Sequence, Union

import matplotlib

matplotlib.use('Agg')

import matplotlib.patches as mpatches  # noqa: E402
import matplotlib.pyplot as plt  # noqa: E402

from skillmosaic.mosaic.snapshot import (Snapshot, SnapshotRecord,  # noqa: E402
                                         load_snapshot)
from skillmosaic.world.geometry import Pose2  # noqa: E402
from skillmosaic.world.objects import ObjectSpec  # noqa: E402

_LOGGER = getLogger(__name__)

HASH_SALT = 'skillmosaic'
NODE_COLOR = 'tab:blue'
EDGE_COLOR = 'tab:orange'
STEP_CMAP = 'viridis'


def _rect(ax, bounds: Sequence[float], **kwargs) -> None:
    xmin, ymin, xmax, ymax = bounds
    ax.add_patch(
        mpatches.Rectangle((xmin, ymin), xmax - xmin, ymax - ymin, **kwargs))


def _draw_scene(ax, scene: dict) -> List[float]:
    """Draw table, bin, obstacles and the start poses of the objects;
    returns the plot bounds."""
    table, bin_ = scene['table'], scene['bin']
    _rect(ax, table, facecolor='#e8dcc8', edgecolor='#8a7a60', zorder=0)
    _rect(ax, bin_, facecolor='#d0d8e0', edgecolor='#506070', zorder=0)
    for i, polygon in enumerate(scene.get('static_obstacles', [])):
        patch = mpatches.Polygon(polygon, closed=True, facecolor='#606060',
                                 zorder=1)
        patch.set_gid(f'obstacle-{i}')
        ax.add_patch(patch)
    poses = scene.get('start', {}).get('object_poses', {})
    for data in scene.get('objects', []):
        spec = ObjectSpec.from_dict(data)
        if spec.id not in poses:
            continue
        footprint = spec.footprint(Pose2.from_list(poses[spec.id]))
        patch = mpatches.Polygon(list(footprint.exterior.coords), closed=True,
                                 facecolor='none', edgecolor='black',
                                 linestyle='--', zorder=2)
        patch.set_gid(f'object-{spec.id}')
        ax.add_patch(patch)
    return [
        min(table[0], bin_[0]) - 0.1,
        max(table[2], bin_[2]) + 0.1,
        min(table[1], bin_[1]) - 0.1,
        max(table[3], bin_[3]) + 0.1
    ]


def _path_length(path: Sequence[Sequence[float]]) -> float:
    return sum(math.dist(a, b) for a, b in zip(path, path[1:]))


def _main_path(record: SnapshotRecord,
               target: Optional[str] = None) -> List[List[float]]:
    """The goal target's path when it moves, else the path of the object
    that travels farthest, else the gripper path."""
    paths = record.payload.get('paths', {})
    if target in paths and target != 'gripper':
        return paths[target]
    objects = sorted(k for k in paths if k != 'gripper')
    if objects:
        return paths[max(objects, key=lambda k: _path_length(paths[k]))]
    return paths.get('gripper', [])



def _polyline(ax, path, gid: str, **kwargs):
    if not path:
        return None
    xs = [p[0] for p in path]
    ys = [p[1] for p in path]
    (line, ) = ax.plot(xs, ys, **kwargs)
    line.set_gid(gid)
    return line


def _marker(ax, path, gid: str, marker: str, color: str) -> None:
    if not path:
        return
    (point, ) = ax.plot([path[-1][0]], [path[-1][1]],
                        linestyle='none',
                        marker=marker,
                        markersize=5,
                        color=color,
                        zorder=4)
    point.set_gid(gid)


def render_snapshot(snapshot: Snapshot,
                    out: Union[str, Path],
                    title: Optional[str] = None) -> Path:
    """Render ``snapshot`` to an SVG file at ``out``."""
    plt.rcParams['svg.hashsalt'] = HASH_SALT
    fig, ax = plt.subplots(figsize=(8, 6))
    try:
        bounds = _draw_scene(ax, snapshot.scene)
        target = snapshot.scene.get('goal', {}).get('target')
        for node in snapshot.nodes:
            path = _main_path(node, target)
            _polyline(ax, path, f'traj-node-{node.id}', color=NODE_COLOR,
                      linewidth=1.0, alpha=0.7, zorder=3)
            _marker(ax, path, f'marker-node-{node.id}', 'o', NODE_COLOR)
        for edge in snapshot.edges:
            path = _main_path(edge, target)
            _polyline(ax, path, f'traj-edge-{edge.id}', color=EDGE_COLOR,
                      linewidth=1.0, alpha=0.7, zorder=3)
            _marker(ax, path, f'marker-edge-{edge.id}', 's', EDGE_COLOR)
        cmap = plt.get_cmap(STEP_CMAP)
        count = max(len(snapshot.steps), 1)
        for step in sorted(snapshot.steps, key=lambda s: s.id):
            _polyline(ax, _main_path(step, target), f'step-{step.id}',
                      color=cmap(step.id / count), linewidth=2.5, zorder=5)
        ax.set_xlim(bounds[0], bounds[1])
        ax.set_ylim(bounds[2], bounds[3])
        ax.set_aspect('equal')
        ax.set_title(title or snapshot.scene.get('name', ''))
        out = Path(out)
        fig.savefig(out, format='svg', metadata={'Date': None})
    finally:
        plt.close(fig)
    _LOGGER.info(f'Rendered {len(snapshot.nodes)} nodes, '
                 f'{len(snapshot.edges)} edges and {len(snapshot.steps)} '
                 f'steps to {out}.')
    return out


def export_svg(snapshot_path: Union[str, Path], out: Union[str, Path]) -> Path:
    """Parse a snapshot file and render it.

    :raise: :class:`~skillmosaic.exceptions.SnapshotParseError` when the file
        is malformed.
    """
    return render_snapshot(load_snapshot(snapshot_path), out)
