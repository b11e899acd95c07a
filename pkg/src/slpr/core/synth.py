"""
Seeded synthetic text regions with analytic sliding-line oracles.

Every spec owns a ``numpy.random.Generator(PCG64(seed))``. The full default
parameter vector of a kind is always drawn in a fixed order and explicit
parameters then override their entries, so fixing one parameter never
shifts the others. No global random state is touched.
"""
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import shapely
from scipy.optimize import brentq
from shapely.geometry import LineString
from shapely.geometry import Polygon as ShapelyPolygon

from ..exceptions import InvalidRect, InvalidSpec, NoIntersection
from ..models.geometry import AxisRect, Polygon
from ..models.shape import PARAM_NAMES, ShapeKind, ShapeSpec
from ..models.target import SlidingAxis

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 128
MIN_SAMPLES = 50
MAX_JITTER = 0.25
ROOT_TOLERANCE = 1e-9
BASE_TOLERANCE = 1e-6


def _generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _rect_params(spec: ShapeSpec, rng: np.random.Generator) -> Dict[str, float]:
    x_min, y_min = rng.uniform(0.0, 100.0, 2)
    width, height = rng.uniform(5.0, 100.0, 2)
    params = {"x_min": x_min, "y_min": y_min, "x_max": x_min + width, "y_max": y_min + height}
    params.update(spec.params)
    return params


def _quad_params(spec: ShapeSpec, rng: np.random.Generator) -> Dict[str, float]:
    cx, cy = rng.uniform(50.0, 150.0, 2)
    width = rng.uniform(20.0, 100.0)
    aspect = rng.uniform(1.0, 5.0)
    angle = rng.uniform(0.0, 360.0)
    jitter = rng.uniform(0.0, 0.15)
    params = {"cx": cx, "cy": cy, "width": width, "height": width / aspect, "angle": angle, "jitter": jitter}
    params.update(spec.params)
    if not 0.0 <= params["jitter"] <= MAX_JITTER:
        raise InvalidSpec(f"jitter must be in [0, {MAX_JITTER}], got {params['jitter']}")
    if params["width"] <= 0 or params["height"] <= 0:
        raise InvalidSpec(f"rotated_quad needs positive width and height, got {params['width']}, {params['height']}")
    return params


def _band_params(spec: ShapeSpec, rng: np.random.Generator) -> Dict[str, float]:
    x0 = rng.uniform(0.0, 50.0)
    y0 = rng.uniform(50.0, 150.0)
    length = rng.uniform(100.0, 300.0)
    height = rng.uniform(10.0, 40.0)
    amplitude_ratio = rng.uniform(0.0, 0.3)
    period_ratio = rng.uniform(1.0, 2.0)
    params = {"x0": x0, "y0": y0, "length": length, "height": height}
    params.update({k: v for k, v in spec.params.items() if k in params})
    params["amplitude"] = spec.params.get("amplitude", amplitude_ratio * params["height"])
    params["period"] = spec.params.get("period", period_ratio * params["length"])
    params["samples"] = spec.params.get("samples", DEFAULT_SAMPLES)
    if params["length"] <= 0 or params["height"] <= 0 or params["period"] <= 0:
        raise InvalidSpec("sine_band needs positive length, height and period")
    samples = params["samples"]
    if samples != int(samples) or samples < MIN_SAMPLES:
        raise InvalidSpec(f"sine_band samples must be an integer >= {MIN_SAMPLES}, got {samples}")
    return params


def _resolve(spec: ShapeSpec) -> Tuple[Dict[str, float], np.random.Generator]:
    rng = _generator(spec.seed)
    if spec.kind is ShapeKind.RECT:
        return _rect_params(spec, rng), rng
    if spec.kind is ShapeKind.ROTATED_QUAD:
        return _quad_params(spec, rng), rng
    return _band_params(spec, rng), rng


def resolve_params(spec: ShapeSpec) -> Dict[str, float]:
    """Complete parameter set of ``spec``: explicit values plus seeded defaults."""
    return _resolve(spec)[0]


def _quad_corners(params: Dict[str, float], rng: np.random.Generator) -> np.ndarray:
    half_w, half_h = params["width"] / 2.0, params["height"] / 2.0
    corners = np.array([[-half_w, -half_h], [half_w, -half_h], [half_w, half_h], [-half_w, half_h]])
    # drawn after the parameter vector, so explicit parameters leave the offsets unchanged
    offsets = rng.uniform(-1.0, 1.0, (4, 2))
    corners = corners + offsets * params["jitter"] * min(params["width"], params["height"])
    theta = math.radians(params["angle"])
    rotation = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    return corners @ rotation.T + np.array([params["cx"], params["cy"]])


def _band_centre(params: Dict[str, float], u):
    """Centre line y offset c(u) = A sin(2 pi u / T), u measured from x0."""
    return params["amplitude"] * np.sin(2.0 * np.pi * np.asarray(u) / params["period"])


def _band_grid(params: Dict[str, float]) -> np.ndarray:
    return np.linspace(0.0, params["length"], int(params["samples"]))


def generate(spec: ShapeSpec) -> Polygon:
    """Deterministic simple polygon for ``spec``; clockwise in image space."""
    params, rng = _resolve(spec)
    if spec.kind is ShapeKind.RECT:
        try:
            rect = AxisRect(params["x_min"], params["y_min"], params["x_max"], params["y_max"])
        except InvalidRect as e:
            raise InvalidSpec(f"rect spec does not describe a rectangle: {e}") from e
        return rect.to_polygon()
    if spec.kind is ShapeKind.ROTATED_QUAD:
        return Polygon.from_coords(_quad_corners(params, rng))

    u = _band_grid(params)
    xs = params["x0"] + u
    centre = params["y0"] + _band_centre(params, u)
    half = params["height"] / 2.0
    top = np.column_stack([xs, centre - half])
    bottom = np.column_stack([xs, centre + half])[::-1]
    return Polygon.from_coords(np.vstack([top, bottom]))


def _shapely_extremes(polygon: Polygon, axis: SlidingAxis, position: float) -> Tuple[float, float]:
    geometry = ShapelyPolygon(polygon.coords)
    x_min, y_min, x_max, y_max = geometry.bounds
    if SlidingAxis(axis) is SlidingAxis.VERTICAL_SLIDING:
        line, free = LineString([(x_min - 1.0, position), (x_max + 1.0, position)]), 0
    else:
        line, free = LineString([(position, y_min - 1.0), (position, y_max + 1.0)]), 1
    hits = shapely.get_coordinates(geometry.exterior.intersection(line))
    if len(hits) == 0:
        raise NoIntersection(f"{SlidingAxis(axis).value} line at {position} misses the shape")
    return float(hits[:, free].min()), float(hits[:, free].max())


def _band_vertical_line(params: Dict[str, float], position: float) -> Tuple[float, float]:
    u = position - params["x0"]
    if not 0.0 <= u <= params["length"]:
        raise NoIntersection(f"vertical line x={position} misses the band")
    centre = params["y0"] + float(_band_centre(params, u))
    half = params["height"] / 2.0
    return centre - half, centre + half


def _band_horizontal_line(params: Dict[str, float], position: float) -> Tuple[float, float]:
    """
    Leftmost / rightmost x where the line y = position meets the band border.

    The inside test g(u) = h/2 - |position - y0 - c(u)| is scanned on the
    sample grid and each sign change is refined with Brent's method.
    """
    half = params["height"] / 2.0

    def inside(u: float) -> float:
        return half - abs(position - params["y0"] - float(_band_centre(params, u)))

    grid = _band_grid(params)
    values = np.array([inside(u) for u in grid])
    positive = values >= 0.0
    if not positive.any():
        raise NoIntersection(f"horizontal line y={position} misses the band")

    def root(i: int) -> float:
        a, b = grid[i], grid[i + 1]
        if values[i] == 0.0:
            return float(a)
        if values[i + 1] == 0.0:
            return float(b)
        return float(brentq(inside, a, b, xtol=ROOT_TOLERANCE))

    changes = np.flatnonzero(positive[:-1] != positive[1:])
    first = 0.0 if positive[0] else root(int(changes[0]))
    last = float(params["length"]) if positive[-1] else root(int(changes[-1]))
    return params["x0"] + first, params["x0"] + last


def oracle_intersections(spec: ShapeSpec, axis: SlidingAxis, position: float) -> Tuple[float, float]:
    """
    (min, max) free coordinate where a sliding line meets the shape border,
    computed from the shape definition rather than the polygon encoder.
    """
    axis = SlidingAxis(axis)
    params, rng = _resolve(spec)
    if spec.kind is ShapeKind.RECT:
        if axis is SlidingAxis.VERTICAL_SLIDING:
            if not params["y_min"] <= position <= params["y_max"]:
                raise NoIntersection(f"horizontal line y={position} misses the rectangle")
            return params["x_min"], params["x_max"]
        if not params["x_min"] <= position <= params["x_max"]:
            raise NoIntersection(f"vertical line x={position} misses the rectangle")
        return params["y_min"], params["y_max"]
    if spec.kind is ShapeKind.ROTATED_QUAD:
        return _shapely_extremes(Polygon.from_coords(_quad_corners(params, rng)), axis, position)
    if axis is SlidingAxis.HORIZONTAL_SLIDING:
        return _band_vertical_line(params, position)
    return _band_horizontal_line(params, position)


def sampling_tolerance(spec: ShapeSpec, axis: SlidingAxis) -> float:
    """
    Largest expected gap between the polygon encoder and the oracle.

    Exact shapes get 1e-6. For sine bands with edge length d = L/(m-1),
    vertical lines see the chord error A (2 pi / T)^2 d^2 / 8 and
    horizontal lines an offset of at most one edge.
    """
    if spec.kind is not ShapeKind.SINE_BAND:
        return BASE_TOLERANCE
    params = resolve_params(spec)
    step = params["length"] / (params["samples"] - 1)
    if SlidingAxis(axis) is SlidingAxis.HORIZONTAL_SLIDING:
        wave = 2.0 * math.pi / params["period"]
        return abs(params["amplitude"]) * wave * wave * step * step / 8.0 + BASE_TOLERANCE
    return step + BASE_TOLERANCE


def sample_corpus(count: int, seed: int = 0, kinds: Optional[Sequence[ShapeKind]] = None,
                  params: Optional[Dict[str, float]] = None) -> List[ShapeSpec]:
    """``count`` specs cycling through ``kinds``, each with its own derived seed."""
    if count < 0:
        raise InvalidSpec(f"count must be >= 0, got {count}")
    kinds = [ShapeKind(k) for k in (kinds or list(ShapeKind))]
    rng = _generator(seed)
    seeds = rng.integers(0, 2**64, size=count, dtype=np.uint64)
    specs = []
    for i in range(count):
        kind = kinds[i % len(kinds)]
        extra = {k: v for k, v in (params or {}).items() if k in PARAM_NAMES[kind.value]}
        specs.append(ShapeSpec(kind=kind, seed=int(seeds[i]), params=extra))
    logger.debug(f"Sampled {count} specs from seed {seed}")
    return specs


def expand_specs(templates: Sequence[ShapeSpec], count: int) -> List[ShapeSpec]:
    """
    ``count`` specs cycling through ``templates``; every template keeps its
    explicit parameters and gets fresh seeds drawn from its own seed.
    """
    if not templates:
        raise InvalidSpec("At least one template spec is required")
    if count < 0:
        raise InvalidSpec(f"count must be >= 0, got {count}")
    streams = [_generator(t.seed) for t in templates]
    specs = []
    for i in range(count):
        slot = i % len(templates)
        seed = int(streams[slot].integers(0, 2**64, dtype=np.uint64))
        specs.append(templates[slot].with_seed(seed))
    return specs
