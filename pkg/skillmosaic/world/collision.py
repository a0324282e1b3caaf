"""Penetration depths between planar convex bodies.

A body is either a disc ``(center, radius)`` or a convex polygon given by
its counter-clockwise world vertices. Positive values mean overlap.
"""
import math
from typing import Tuple

import numpy as np


def disc_disc(c1: Tuple[float, float], r1: float, c2: Tuple[float, float],
              r2: float) -> float:
    return r1 + r2 - math.hypot(c1[0] - c2[0], c1[1] - c2[1])


def point_polygon_signed_distance(point: np.ndarray,
                                  vertices: np.ndarray) -> float:
    """Signed distance from ``point`` to the polygon boundary, negative
    inside."""
    edges = np.roll(vertices, -1, axis=0) - vertices
    lengths = np.linalg.norm(edges, axis=1)
    normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1) / lengths[:, None]
    offsets = np.einsum('ij,ij->i', normals, point - vertices)
    if np.all(offsets <= 0.0):
        return float(np.max(offsets))
    # outside: distance to the closest segment
    rel = point - vertices
    t = np.clip(np.einsum('ij,ij->i', rel, edges) / lengths**2, 0.0, 1.0)
    closest = vertices + t[:, None] * edges
    return float(np.min(np.linalg.norm(point - closest, axis=1)))


def disc_polygon(center: Tuple[float, float], radius: float,
                 vertices: np.ndarray) -> float:
    return radius - point_polygon_signed_distance(np.asarray(center),
                                                  vertices)


def polygon_polygon(va: np.ndarray, vb: np.ndarray) -> float:
    """Minimum overlap over the separating axes of both polygons."""
    depth = math.inf
    for vertices in (va, vb):
        edges = np.roll(vertices, -1, axis=0) - vertices
        axes = np.stack([edges[:, 1], -edges[:, 0]], axis=1)
        axes /= np.linalg.norm(axes, axis=1)[:, None]
        pa = va @ axes.T
        pb = vb @ axes.T
        overlap = np.minimum(pa.max(axis=0), pb.max(axis=0)) - np.maximum(
            pa.min(axis=0), pb.min(axis=0))
        depth = min(depth, float(overlap.min()))
    return depth
