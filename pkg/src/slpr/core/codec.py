"""
Polygon <-> SLPR target conversion.

A region is encoded as its minimal axis rectangle plus, for n equidistant
horizontal lines (vertically sliding), the min/max x of their intersections
with the border, and for n equidistant vertical lines (horizontally
sliding), the min/max y. The fixed coordinate of every point is recomputed
from the rectangle, so only 4 + 4n numbers are stored.
"""
import logging
from typing import List, Tuple

import numpy as np

from ..exceptions import EncodingFailure, InvalidRect, SizeMismatch
from ..models.geometry import AxisRect, Point, Polygon
from ..models.target import ChainAxis, PointChains, SlidingAxis, SlprTarget
from .geom import polygon_area, polygon_bbox

logger = logging.getLogger(__name__)

DEFAULT_NUM_LINES = 7


def sliding_positions(rect: AxisRect, n: int, axis: SlidingAxis) -> Tuple[float, ...]:
    """
    Fixed coordinates of the n sliding lines, strictly inside ``rect``.

    VERTICAL_SLIDING gives y positions y_min + h*k/(n+1), HORIZONTAL_SLIDING
    the analogous x positions, for k = 1..n.
    """
    if not isinstance(rect, AxisRect):
        raise InvalidRect(f"Expected AxisRect, got {type(rect).__name__}")
    if n < 1:
        raise SizeMismatch(f"Number of sliding lines must be >= 1, got {n}")
    steps = np.arange(1, n + 1, dtype=float)
    if SlidingAxis(axis) is SlidingAxis.VERTICAL_SLIDING:
        values = rect.y_min + rect.height * steps / (n + 1)
    else:
        values = rect.x_min + rect.width * steps / (n + 1)
    return tuple(float(v) for v in values)


def line_intersections(p: Polygon, position: float, axis: SlidingAxis) -> np.ndarray:
    """
    Free coordinates where one sliding line meets the border of ``p``.

    An edge lying on the line contributes both of its endpoints.
    """
    # fixed = coordinate the line pins, free = coordinate we report
    fixed_index = 1 if SlidingAxis(axis) is SlidingAxis.VERTICAL_SLIDING else 0
    start = p.coords
    end = np.roll(p.coords, -1, axis=0)
    fs, fe = start[:, fixed_index], end[:, fixed_index]
    vs, ve = start[:, 1 - fixed_index], end[:, 1 - fixed_index]

    on_line = (fs == position) & (fe == position)
    crossing = (np.minimum(fs, fe) <= position) & (position <= np.maximum(fs, fe)) & (fs != fe)

    t = (position - fs[crossing]) / (fe[crossing] - fs[crossing])
    crossed = vs[crossing] + t * (ve[crossing] - vs[crossing])
    return np.concatenate([vs[on_line], ve[on_line], crossed])


def _extreme_pairs(p: Polygon, positions: Tuple[float, ...], axis: SlidingAxis) -> List[float]:
    pairs: List[float] = []
    for position in positions:
        hits = line_intersections(p, position, axis)
        if hits.size == 0:
            raise EncodingFailure(f"{SlidingAxis(axis).value} line at {position} does not meet the border")
        pairs.extend((float(hits.min()), float(hits.max())))
    return pairs


def encode(p: Polygon, n: int = DEFAULT_NUM_LINES) -> SlprTarget:
    """
    Encode a simple polygon into its 4 + 4n parameter target.

    Args:
        p: Simple polygon with positive area
        n: Number of sliding lines per direction

    Returns:
        SlprTarget holding the minimal axis rectangle and 4n intersection coordinates
    """
    polygon_area(p)
    rect = polygon_bbox(p)
    x_v = _extreme_pairs(p, sliding_positions(rect, n, SlidingAxis.VERTICAL_SLIDING), SlidingAxis.VERTICAL_SLIDING)
    y_h = _extreme_pairs(p, sliding_positions(rect, n, SlidingAxis.HORIZONTAL_SLIDING), SlidingAxis.HORIZONTAL_SLIDING)
    return SlprTarget(rect=rect, x_v=tuple(x_v), y_h=tuple(y_h), n=n)


def decode(t: SlprTarget) -> Tuple[PointChains, PointChains]:
    """
    Restore the 4n boundary points of a target.

    Returns (left/right chains of the vertically sliding lines, top/bottom
    chains of the horizontally sliding lines). Regressed values outside the
    rectangle are clamped into it and each pair is put in (min, max) order.
    """
    rect = t.rect
    ys = sliding_positions(rect, t.n, SlidingAxis.VERTICAL_SLIDING)
    xs = sliding_positions(rect, t.n, SlidingAxis.HORIZONTAL_SLIDING)

    left, right = [], []
    for (a, b), y in zip(t.x_pairs(), ys):
        a, b = rect.clamp_x(a), rect.clamp_x(b)
        left.append(Point(min(a, b), y))
        right.append(Point(max(a, b), y))

    top, bottom = [], []
    for (a, b), x in zip(t.y_pairs(), xs):
        a, b = rect.clamp_y(a), rect.clamp_y(b)
        top.append(Point(x, min(a, b)))
        bottom.append(Point(x, max(a, b)))

    vertical = PointChains(first=tuple(left), second=tuple(right), axis=ChainAxis.VERTICAL_TEXT)
    horizontal = PointChains(first=tuple(top), second=tuple(bottom), axis=ChainAxis.HORIZONTAL_TEXT)
    return vertical, horizontal


def decoded_points(t: SlprTarget) -> List[Point]:
    """All 4n decoded points: vertically sliding pairs first, then horizontally sliding."""
    vertical, horizontal = decode(t)
    points: List[Point] = []
    for chains in (vertical, horizontal):
        for lo, hi in zip(chains.first, chains.second):
            points.extend((lo, hi))
    return points
