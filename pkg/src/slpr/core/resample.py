"""
Vertex-count adapters for fixed-size output grammars.
"""
import logging

import numpy as np
import shapely
from shapely.geometry import Polygon as ShapelyPolygon

from ..exceptions import FormatError
from ..models.geometry import Polygon
from .geom import polygon_signed_area

logger = logging.getLogger(__name__)

CTW_VERTICES = 14


def resample_polyline(points: np.ndarray, count: int) -> np.ndarray:
    """``count`` points uniform in arc length along an open polyline, endpoints kept."""
    segments = np.linalg.norm(np.diff(points, axis=0), axis=1)
    arc = np.concatenate([[0.0], np.cumsum(segments)])
    if arc[-1] <= 0.0:
        raise FormatError("Cannot resample a zero-length chain")
    targets = np.linspace(0.0, arc[-1], count)
    xs = np.interp(targets, arc, points[:, 0])
    ys = np.interp(targets, arc, points[:, 1])
    return np.column_stack([xs, ys])


def _densify(coords: np.ndarray, minimum: int) -> np.ndarray:
    while len(coords) < minimum:
        edges = np.roll(coords, -1, axis=0) - coords
        longest = int(np.argmax(np.linalg.norm(edges, axis=1)))
        midpoint = coords[longest] + 0.5 * edges[longest]
        coords = np.insert(coords, longest + 1, midpoint, axis=0)
    return coords


def resample_to_14(p: Polygon) -> Polygon:
    """
    14-vertex version of ``p`` for the curved-text grammar.

    The vertex list is split into two halves (the two long-side chains of a
    PLS restoration) and each half is resampled to 7 points.
    """
    if len(p) == CTW_VERTICES:
        return p
    coords = _densify(np.asarray(p.coords, dtype=float), 4)
    half = (len(coords) + 1) // 2
    per_chain = CTW_VERTICES // 2
    first = resample_polyline(coords[:half], per_chain)
    second = resample_polyline(coords[half:], per_chain)
    logger.debug(f"Resampled {len(p)}-gon to {CTW_VERTICES} vertices")
    return Polygon.from_coords(np.vstack([first, second]))


def to_quadrilateral(p: Polygon) -> Polygon:
    """
    Minimum rotated rectangle around ``p`` (or ``p`` itself if it already has
    4 vertices), clockwise in image space from the corner nearest the bbox
    origin.
    """
    if len(p) == 4:
        return p
    box = shapely.minimum_rotated_rectangle(ShapelyPolygon(p.coords))
    if not isinstance(box, ShapelyPolygon) or box.area <= 0.0:
        raise FormatError(f"Cannot fit a quadrilateral around a degenerate {len(p)}-gon")
    corners = np.asarray(box.exterior.coords)[:4]
    quad = Polygon.from_coords(corners)
    if polygon_signed_area(quad) < 0:
        corners = corners[::-1]
    origin = corners.min(axis=0)
    first = int(np.argmin(np.linalg.norm(corners - origin, axis=1)))
    return Polygon.from_coords(np.roll(corners, -first, axis=0))


def fit_vertex_count(p: Polygon, format_name: str) -> Polygon:
    """Adapt ``p`` to the vertex count a grammar requires."""
    if format_name == "icdar15":
        return to_quadrilateral(p)
    if format_name == "ctw1500":
        return resample_to_14(p)
    return p
