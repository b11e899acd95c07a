"""
Geometric value types: points, axis-aligned rectangles and simple polygons.

All coordinates are pixels; y grows downwards as in image space.
"""
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from ..exceptions import DegeneratePolygon, InvalidRect

CoordLike = Union[Sequence[float], "Point"]


@dataclass(frozen=True)
class Point:
    """A finite 2D point."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DegeneratePolygon(f"Non-finite point ({self.x}, {self.y})")

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class AxisRect:
    """Axis-aligned rectangle with x_min < x_max and y_min < y_max."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self):
        values = (self.x_min, self.y_min, self.x_max, self.y_max)
        if not all(math.isfinite(v) for v in values):
            raise InvalidRect(f"Non-finite rectangle bounds {values}")
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise InvalidRect(f"Empty rectangle {values}")

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    @property
    def aspect(self) -> float:
        """Height over width, the h/w ratio used for orientation decisions."""
        return self.height / self.width

    @property
    def area(self) -> float:
        return self.width * self.height

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.x_min, self.y_min, self.x_max, self.y_max)

    def corners(self) -> Tuple[Point, Point, Point, Point]:
        """Corners clockwise in image space, starting at (x_min, y_min)."""
        return (
            Point(self.x_min, self.y_min),
            Point(self.x_max, self.y_min),
            Point(self.x_max, self.y_max),
            Point(self.x_min, self.y_max),
        )

    def to_polygon(self) -> "Polygon":
        return Polygon(self.corners())

    def contains_rect(self, other: "AxisRect", tol: float = 0.0) -> bool:
        return (
            self.x_min - tol <= other.x_min
            and self.y_min - tol <= other.y_min
            and other.x_max <= self.x_max + tol
            and other.y_max <= self.y_max + tol
        )

    def clamp_x(self, x: float) -> float:
        return min(max(x, self.x_min), self.x_max)

    def clamp_y(self, y: float) -> float:
        return min(max(y, self.y_min), self.y_max)


@dataclass(frozen=True)
class Polygon:
    """
    Ordered vertex chain of a text region border (implicitly closed).

    Construction checks vertex count, finiteness and consecutive duplicates;
    area and simplicity are checked by ``slpr.core.geom.validate``.
    """

    vertices: Tuple[Point, ...]

    def __post_init__(self):
        vertices = tuple(self.vertices)
        object.__setattr__(self, "vertices", vertices)
        if len(vertices) < 3:
            raise DegeneratePolygon(f"Polygon needs at least 3 vertices, got {len(vertices)}")
        for i, vertex in enumerate(vertices):
            if vertex == vertices[i - 1]:
                raise DegeneratePolygon(f"Consecutive identical vertices at index {i}: {vertex}")

    @classmethod
    def from_coords(cls, coords: Iterable[CoordLike]) -> "Polygon":
        """Build from an iterable of (x, y) pairs or Points."""
        points = []
        for item in coords:
            if isinstance(item, Point):
                points.append(item)
            else:
                x, y = item
                points.append(Point(float(x), float(y)))
        return cls(tuple(points))

    @classmethod
    def from_flat(cls, values: Sequence[float]) -> "Polygon":
        """Build from a flat x1, y1, x2, y2, ... sequence."""
        if len(values) % 2:
            raise DegeneratePolygon(f"Odd number of coordinates: {len(values)}")
        return cls.from_coords(zip(values[0::2], values[1::2]))

    @cached_property
    def coords(self) -> np.ndarray:
        """Vertices as a read-only (N, 2) float array."""
        array = np.array([(p.x, p.y) for p in self.vertices], dtype=float)
        array.setflags(write=False)
        return array

    def to_flat(self) -> Tuple[float, ...]:
        return tuple(float(v) for v in self.coords.ravel())

    def to_list(self):
        return [[p.x, p.y] for p in self.vertices]

    def translate(self, dx: float, dy: float) -> "Polygon":
        return Polygon.from_coords(self.coords + np.array([dx, dy]))

    def scale(self, factor: float, origin: Tuple[float, float] = (0.0, 0.0)) -> "Polygon":
        origin_arr = np.asarray(origin, dtype=float)
        return Polygon.from_coords((self.coords - origin_arr) * factor + origin_arr)

    def __len__(self) -> int:
        return len(self.vertices)
