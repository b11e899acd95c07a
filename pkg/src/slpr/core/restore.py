"""
Polygon restoration from (possibly noisy) SLPR targets.

PLS keeps only the chains along the long side of the rectangle and closes
them by extrapolating the end segments to the rectangle border. BHVP fits a
quadrilateral through all decoded points.
"""
import logging
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import DegeneratePolygon, DegenerateRestoration, FitFailure
from ..models.config import RestoreConfig, RestoreMethod
from ..models.geometry import AxisRect, Polygon
from ..models.target import PointChains, SlprTarget
from .codec import decode, decoded_points
from .geom import AREA_EPS, polygon_signed_area

logger = logging.getLogger(__name__)

MAX_FIT_ITERATIONS = 20
PARALLEL_EPS = 1e-12


class TextOrientation(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    AMBIGUOUS = "ambiguous"


def classify_orientation(rect: AxisRect, k: float = 0.8) -> TextOrientation:
    """Horizontal if h/w <= k, vertical if h/w >= 1/k, ambiguous in between."""
    aspect = rect.aspect
    if k < aspect < 1.0 / k:
        return TextOrientation.AMBIGUOUS
    return TextOrientation.HORIZONTAL if aspect <= k else TextOrientation.VERTICAL


# ---------------------------------------------------------------------------
# PLS
# ---------------------------------------------------------------------------

def _extrapolate(fixed: Sequence[float], free: Sequence[float], target: float, at_start: bool) -> float:
    """Free coordinate where the end secant of a chain meets fixed = target."""
    if len(fixed) == 1:
        return free[0]
    if at_start:
        f1, f2, v1, v2 = fixed[0], fixed[1], free[0], free[1]
    else:
        f1, f2, v1, v2 = fixed[-2], fixed[-1], free[-2], free[-1]
    return v1 + (target - f1) * (v2 - v1) / (f2 - f1)


def _dedupe(coords: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
    kept = [c for i, c in enumerate(coords) if c != coords[i - 1]]
    return kept if kept else coords[:1]


def restore_pls(t: SlprTarget, cfg: Optional[RestoreConfig] = None) -> Polygon:
    """
    Restore a 2n+4 vertex polygon from the long-side chains.

    Horizontal text (h <= w) uses the top/bottom chains of the vertical
    lines and extends them to x = x_min / x_max; vertical text uses the
    left/right chains and extends them to y = y_min / y_max.
    """
    rect = t.rect
    vertical, horizontal = decode(t)
    is_horizontal = rect.height <= rect.width
    if cfg is not None and logger.isEnabledFor(logging.DEBUG):
        logger.debug(f"PLS orientation={'horizontal' if is_horizontal else 'vertical'} "
                     f"class={classify_orientation(rect, cfg.k).value}")

    chains: PointChains = horizontal if is_horizontal else vertical
    if is_horizontal:
        fixed_lo, fixed_hi, free_lo, free_hi = rect.x_min, rect.x_max, rect.y_min, rect.y_max
        fixed = [p.x for p in chains.first]
        first = [p.y for p in chains.first]
        second = [p.y for p in chains.second]
    else:
        fixed_lo, fixed_hi, free_lo, free_hi = rect.y_min, rect.y_max, rect.x_min, rect.x_max
        fixed = [p.y for p in chains.first]
        first = [p.x for p in chains.first]
        second = [p.x for p in chains.second]

    def clamp(v: float) -> float:
        return min(max(v, free_lo), free_hi)

    first_start = clamp(_extrapolate(fixed, first, fixed_lo, at_start=True))
    first_end = clamp(_extrapolate(fixed, first, fixed_hi, at_start=False))
    second_start = clamp(_extrapolate(fixed, second, fixed_lo, at_start=True))
    second_end = clamp(_extrapolate(fixed, second, fixed_hi, at_start=False))
    # keep the closing edges from crossing
    first_start, second_start = min(first_start, second_start), max(first_start, second_start)
    first_end, second_end = min(first_end, second_end), max(first_end, second_end)

    ring = [(fixed_lo, first_start)]
    ring += list(zip(fixed, first))
    ring += [(fixed_hi, first_end), (fixed_hi, second_end)]
    ring += list(zip(reversed(fixed), reversed(second)))
    ring += [(fixed_lo, second_start)]
    if not is_horizontal:
        ring = [(x, y) for y, x in ring]

    ring = _dedupe(ring)
    if len(ring) < 3:
        raise DegenerateRestoration(f"PLS restoration collapsed to {len(ring)} vertices")
    polygon = Polygon.from_coords(ring)
    if abs(polygon_signed_area(polygon)) < AREA_EPS:
        raise DegenerateRestoration("PLS restoration has zero area")
    return polygon


# ---------------------------------------------------------------------------
# BHVP
# ---------------------------------------------------------------------------

def _tls_line(points: np.ndarray) -> Tuple[np.ndarray, float]:
    """Total least squares line as (unit normal, offset) with normal . p = offset."""
    centroid = points.mean(axis=0)
    _, _, vt = np.linalg.svd(points - centroid)
    direction = vt[0]
    normal = np.array([-direction[1], direction[0]])
    return normal, float(normal @ centroid)


def _segment_costs(points: np.ndarray) -> np.ndarray:
    """
    cost[i, j]: TLS residual of points i..j (inclusive) of the doubled cyclic
    sequence; inf for segments shorter than 2 or longer than N points.
    """
    n = len(points)
    doubled = np.vstack([points, points])
    x, y = doubled[:, 0], doubled[:, 1]
    zero = np.zeros(1)
    sx = np.concatenate([zero, np.cumsum(x)])
    sy = np.concatenate([zero, np.cumsum(y)])
    sxx = np.concatenate([zero, np.cumsum(x * x)])
    syy = np.concatenate([zero, np.cumsum(y * y)])
    sxy = np.concatenate([zero, np.cumsum(x * y)])

    i = np.arange(2 * n)[:, None]
    j = np.arange(2 * n)[None, :]
    count = (j - i + 1).astype(float)
    valid = (count >= 2) & (count <= n)
    safe = np.where(valid, count, 1.0)

    def window(s):
        return s[np.minimum(j + 1, 2 * n)] - s[i]

    mx, my = window(sx) / safe, window(sy) / safe
    cxx = window(sxx) - safe * mx * mx
    cyy = window(syy) - safe * my * my
    cxy = window(sxy) - safe * mx * my
    half_trace = 0.5 * (cxx + cyy)
    smallest = half_trace - np.sqrt(np.maximum(0.25 * (cxx - cyy) ** 2 + cxy ** 2, 0.0))
    return np.where(valid, np.maximum(smallest, 0.0), np.inf)


def _segment_cycle(points: np.ndarray, sides: int = 4) -> np.ndarray:
    """Split the cyclic point order into ``sides`` contiguous arcs of least total residual."""
    n = len(points)
    costs = _segment_costs(points)
    best_total, best_labels = np.inf, None
    for start in range(n):
        local = costs[start:start + n, start:start + n]
        # shifted[b, e] = cost of the arc b..e-1 (local indices)
        shifted = np.full((n, n + 1), np.inf)
        shifted[:, 1:] = local
        score = shifted[0].copy()
        back = []
        for _ in range(sides - 2):
            candidates = score[:n, None] + shifted
            back.append(np.argmin(candidates, axis=0))
            score = candidates.min(axis=0)
        closing = score[:n] + shifted[:, n]
        last = int(np.argmin(closing))
        total = float(closing[last])
        if total < best_total:
            bounds = [last]
            for pointers in reversed(back):
                bounds.append(int(pointers[bounds[-1]]))
            bounds = [0] + list(reversed(bounds)) + [n]
            labels = np.empty(n, dtype=int)
            for side in range(sides):
                labels[(np.arange(bounds[side], bounds[side + 1]) + start) % n] = side
            best_total, best_labels = total, labels
    if best_labels is None:
        raise FitFailure(f"Cannot split {n} points into {sides} sides of at least 2 points")
    return best_labels


def _fit_lines(points: np.ndarray, labels: np.ndarray, sides: int = 4) -> List[Tuple[np.ndarray, float]]:
    lines = []
    for side in range(sides):
        members = points[labels == side]
        if len(members) < 2:
            raise FitFailure(f"Side {side} received {len(members)} points")
        lines.append(_tls_line(members))
    return lines


def fit_quadrilateral(points: np.ndarray) -> np.ndarray:
    """
    Fit four side lines through boundary points and return the 4 corners.

    Points are put in boundary order by angle around their centroid, the
    cycle is split into four arcs, and the side lines are then refined by
    nearest-line reassignment and TLS refits until assignments stop changing.
    """
    if len(points) < 8:
        raise FitFailure(f"Need at least 8 points for four sides, got {len(points)}")
    centroid = points.mean(axis=0)
    angles = np.arctan2(points[:, 1] - centroid[1], points[:, 0] - centroid[0])
    ordered = points[np.argsort(angles, kind="stable")]

    labels = _segment_cycle(ordered - centroid)
    lines = _fit_lines(ordered, labels)
    for _ in range(MAX_FIT_ITERATIONS):
        normals = np.array([normal for normal, _ in lines])
        offsets = np.array([offset for _, offset in lines])
        distances = np.abs(ordered @ normals.T - offsets)
        new_labels = np.argmin(distances, axis=1)
        if np.array_equal(new_labels, labels):
            break
        try:
            lines = _fit_lines(ordered, new_labels)
        except FitFailure as e:
            logger.debug(f"Keeping previous side lines: {e}")
            break
        labels = new_labels
    else:
        logger.debug(f"BHVP side assignment did not settle in {MAX_FIT_ITERATIONS} iterations")

    corners = []
    for side in range(4):
        (n1, d1), (n2, d2) = lines[side], lines[(side + 1) % 4]
        det = n1[0] * n2[1] - n1[1] * n2[0]
        if abs(det) < PARALLEL_EPS:
            raise FitFailure(f"Sides {side} and {(side + 1) % 4} are parallel")
        corners.append(np.linalg.solve(np.array([n1, n2]), np.array([d1, d2])))
    return np.array(corners)


def restore_bhvp(t: SlprTarget) -> Polygon:
    """
    Quadrilateral through all decoded points, clockwise in image space,
    starting from the corner nearest (x_min, y_min).
    """
    points = np.array([p.as_tuple() for p in decoded_points(t)], dtype=float)
    corners = fit_quadrilateral(points)
    if not np.all(np.isfinite(corners)):
        raise FitFailure("Non-finite quadrilateral corner")

    try:
        quad = Polygon.from_coords(corners)
    except DegeneratePolygon as e:
        raise FitFailure(f"Fitted quadrilateral is degenerate: {e}") from e
    signed = polygon_signed_area(quad)
    if abs(signed) < AREA_EPS:
        raise FitFailure("Fitted quadrilateral has zero area")
    if signed < 0:
        corners = corners[::-1]
    origin = np.array([t.rect.x_min, t.rect.y_min])
    first = int(np.argmin(np.linalg.norm(corners - origin, axis=1)))
    return Polygon.from_coords(np.roll(corners, -first, axis=0))


def restore(t: SlprTarget, cfg: Optional[RestoreConfig] = None) -> Polygon:
    """
    Restore a polygon with the configured method.

    Args:
        t: Target, possibly regressed and noisy
        cfg: Method and aspect threshold; defaults to PLS

    Returns:
        The restored polygon; BHVP falls back to the rectangle on FitFailure

    Raises:
        DegenerateRestoration: PLS chains collapse to zero area
    """
    cfg = cfg or RestoreConfig()
    if cfg.method is RestoreMethod.PLS:
        return restore_pls(t, cfg)
    try:
        return restore_bhvp(t)
    except FitFailure as e:
        logger.warning(f"BHVP fit failed ({e}); using the rectangle")
        return t.rect.to_polygon()
