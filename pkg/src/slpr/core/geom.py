"""
Polygon and rectangle primitives: area, bounding box, intersection and IoU.

Clipping is delegated to shapely (GEOS), which handles non-convex simple
polygons such as PLS restorations.
"""
import logging
from typing import Sequence, Tuple

import numpy as np
import shapely
from shapely.geometry import Point as ShapelyPoint
from shapely.geometry import Polygon as ShapelyPolygon
from shapely.validation import explain_validity

from ..exceptions import DegeneratePolygon
from ..models.geometry import AxisRect, Point, Polygon

logger = logging.getLogger(__name__)

# Areas (px^2) and extents (px) below this are degenerate.
AREA_EPS = 1e-9
EXTENT_EPS = 1e-9


def polygon_signed_area(p: Polygon) -> float:
    """Shoelace area; positive for clockwise order in image space (y down)."""
    x = p.coords[:, 0]
    y = p.coords[:, 1]
    return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_area(p: Polygon) -> float:
    area = abs(polygon_signed_area(p))
    if area < AREA_EPS:
        raise DegeneratePolygon(f"Polygon area {area} below {AREA_EPS}")
    return area


def polygon_bbox(p: Polygon) -> AxisRect:
    """Tightest axis-aligned rectangle containing every vertex."""
    x_min, y_min = p.coords.min(axis=0)
    x_max, y_max = p.coords.max(axis=0)
    if x_max - x_min < EXTENT_EPS or y_max - y_min < EXTENT_EPS:
        raise DegeneratePolygon(f"Polygon bbox has zero extent: ({x_min}, {y_min}, {x_max}, {y_max})")
    return AxisRect(float(x_min), float(y_min), float(x_max), float(y_max))


def validate(p: Polygon) -> Polygon:
    """
    Full invariant check: positive area and no self-intersection.

    O(n^2) in the worst case, so hot loops (NMS, IoU) do not call it.
    """
    polygon_area(p)
    geometry = ShapelyPolygon(p.coords)
    if not geometry.is_valid:
        raise DegeneratePolygon(f"Polygon is not simple: {explain_validity(geometry)}")
    return p


def to_shapely(p: Polygon):
    """Shapely geometry for ``p``; self-touching input is repaired with make_valid."""
    geometry = ShapelyPolygon(p.coords)
    if not geometry.is_valid:
        logger.debug(f"Repairing invalid polygon: {explain_validity(geometry)}")
        geometry = shapely.make_valid(geometry)
    return geometry


def _ordered(a: Polygon, b: Polygon) -> Tuple[Polygon, Polygon]:
    # clipping is evaluated in a canonical argument order so results are exactly symmetric
    return (a, b) if a.to_flat() <= b.to_flat() else (b, a)


def polygon_intersection_area(a: Polygon, b: Polygon) -> float:
    first, second = _ordered(a, b)
    geometry_a, geometry_b = to_shapely(first), to_shapely(second)
    if not geometry_a.intersects(geometry_b):
        return 0.0
    return float(geometry_a.intersection(geometry_b).area)


def _iou_from_areas(area_a: float, area_b: float, inter: float) -> float:
    union = area_a + area_b - inter
    if union <= 0.0:
        return 0.0
    return min(1.0, max(0.0, inter / union))


def polygon_iou(a: Polygon, b: Polygon) -> float:
    """|a ∩ b| / |a ∪ b| with |a ∪ b| = |a| + |b| - |a ∩ b|."""
    first, second = _ordered(a, b)
    geometry_a, geometry_b = to_shapely(first), to_shapely(second)
    area_a, area_b = geometry_a.area, geometry_b.area
    if area_a < AREA_EPS or area_b < AREA_EPS:
        raise DegeneratePolygon(f"Zero-area polygon in IoU (areas {area_a}, {area_b})")
    if not geometry_a.intersects(geometry_b):
        return 0.0
    inter = geometry_a.intersection(geometry_b).area
    return _iou_from_areas(area_a, area_b, inter)


def polygon_iou_many(a: Polygon, others: Sequence[Polygon]) -> np.ndarray:
    """
    IoU of ``a`` against every polygon in ``others`` in one vectorised pass.

    Pairs are evaluated in the same canonical order as ``polygon_iou`` so the
    values are identical to the scalar function.
    """
    if not others:
        return np.zeros(0, dtype=float)
    key_a = a.to_flat()
    geometry_a = to_shapely(a)
    geometries = [to_shapely(o) for o in others]
    swap = np.array([key_a > o.to_flat() for o in others], dtype=bool)
    left = np.array([g if s else geometry_a for g, s in zip(geometries, swap)], dtype=object)
    right = np.array([geometry_a if s else g for g, s in zip(geometries, swap)], dtype=object)

    area_a = geometry_a.area
    areas = shapely.area(np.array(geometries, dtype=object))
    if area_a < AREA_EPS or np.any(areas < AREA_EPS):
        raise DegeneratePolygon("Zero-area polygon in IoU")
    hits = shapely.intersects(left, right)
    inter = np.zeros(len(others), dtype=float)
    if np.any(hits):
        inter[hits] = shapely.area(shapely.intersection(left[hits], right[hits]))
    # same operand order as _iou_from_areas(first.area, second.area, inter)
    area_left = np.where(swap, areas, area_a)
    area_right = np.where(swap, area_a, areas)
    union = area_left + area_right - inter
    iou = np.where(union > 0.0, inter / np.where(union > 0.0, union, 1.0), 0.0)
    return np.clip(np.where(hits, iou, 0.0), 0.0, 1.0)


def rect_area(r: AxisRect) -> float:
    return r.width * r.height


def rect_intersection_area(a: AxisRect, b: AxisRect) -> float:
    width = min(a.x_max, b.x_max) - max(a.x_min, b.x_min)
    height = min(a.y_max, b.y_max) - max(a.y_min, b.y_min)
    if width <= 0.0 or height <= 0.0:
        return 0.0
    return width * height


def rect_iou(a: AxisRect, b: AxisRect) -> float:
    inter = rect_intersection_area(a, b)
    if inter == 0.0:
        return 0.0
    return _iou_from_areas(rect_area(a), rect_area(b), inter)


def point_to_boundary_distance(p: Polygon, point: Point) -> float:
    """Euclidean distance from ``point`` to the border of ``p``."""
    return float(ShapelyPolygon(p.coords).exterior.distance(ShapelyPoint(point.x, point.y)))


def contains_polygon(outer: Polygon, inner: Polygon, tol: float = 1e-9) -> bool:
    """True if ``inner`` lies inside ``outer`` up to an area tolerance."""
    geometry_inner = to_shapely(inner)
    return geometry_inner.difference(to_shapely(outer)).area <= tol * max(geometry_inner.area, 1.0)


def to_svg_path(p: Polygon, stroke: str = "#d62728") -> str:
    """SVG ``<path>`` element for a polygon, for diagnostic dumps."""
    return to_shapely(p).svg(scale_factor=1.0, fill_color=stroke)
