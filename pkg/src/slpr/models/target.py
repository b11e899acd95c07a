"""
SLPR regression target: the minimal axis rectangle plus the sliding-line
intersection coordinates.
"""
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

from ..exceptions import SizeMismatch
from .geometry import AxisRect, Point


class SlidingAxis(str, Enum):
    """Direction in which a family of sliding lines moves."""

    # horizontal lines sliding along y; their intersections contribute x values
    VERTICAL_SLIDING = "vertical_sliding"
    # vertical lines sliding along x; their intersections contribute y values
    HORIZONTAL_SLIDING = "horizontal_sliding"


class ChainAxis(str, Enum):
    HORIZONTAL_TEXT = "horizontal_text"  # top / bottom chains
    VERTICAL_TEXT = "vertical_text"  # left / right chains


@dataclass(frozen=True)
class SlprTarget:
    """
    Rect (4 parameters) plus 2n x-coordinates and 2n y-coordinates.

    ``x_v`` holds, for each vertically sliding line k = 1..n, the pair
    (min x, max x) interleaved; ``y_h`` likewise holds (min y, max y) per
    horizontally sliding line.
    """

    rect: AxisRect
    x_v: Tuple[float, ...]
    y_h: Tuple[float, ...]
    n: int = 7

    def __post_init__(self):
        object.__setattr__(self, "x_v", tuple(float(v) for v in self.x_v))
        object.__setattr__(self, "y_h", tuple(float(v) for v in self.y_h))
        if self.n < 1:
            raise SizeMismatch(f"Number of sliding lines must be >= 1, got {self.n}")
        if len(self.x_v) != 2 * self.n or len(self.y_h) != 2 * self.n:
            raise SizeMismatch(
                f"Expected {2 * self.n} coordinates per direction, got x_v={len(self.x_v)}, y_h={len(self.y_h)}"
            )

    @property
    def num_parameters(self) -> int:
        return 4 + 4 * self.n

    def x_pairs(self) -> List[Tuple[float, float]]:
        return list(zip(self.x_v[0::2], self.x_v[1::2]))

    def y_pairs(self) -> List[Tuple[float, float]]:
        return list(zip(self.y_h[0::2], self.y_h[1::2]))

    def to_vector(self) -> Tuple[float, ...]:
        """Flat layout: x_min, y_min, x_max, y_max, x_v..., y_h..."""
        return self.rect.as_tuple() + self.x_v + self.y_h

    @classmethod
    def from_vector(cls, values: Sequence[float]) -> "SlprTarget":
        """Inverse of ``to_vector``; n is inferred from the length (4 + 4n)."""
        if len(values) < 8 or (len(values) - 4) % 4:
            raise SizeMismatch(f"Target vector length must be 4 + 4n, got {len(values)}")
        n = (len(values) - 4) // 4
        rect = AxisRect(*(float(v) for v in values[:4]))
        return cls(rect=rect, x_v=tuple(values[4 : 4 + 2 * n]), y_h=tuple(values[4 + 2 * n :]), n=n)

    def with_coords(self, x_v: Sequence[float], y_h: Sequence[float]) -> "SlprTarget":
        return SlprTarget(rect=self.rect, x_v=tuple(x_v), y_h=tuple(y_h), n=self.n)


@dataclass(frozen=True)
class PointChains:
    """Two ordered chains of n points each, sorted by the fixed coordinate."""

    first: Tuple[Point, ...]
    second: Tuple[Point, ...]
    axis: ChainAxis

    def __post_init__(self):
        if len(self.first) != len(self.second):
            raise SizeMismatch(f"Chains differ in length: {len(self.first)} vs {len(self.second)}")

    @property
    def n(self) -> int:
        return len(self.first)

    def points(self) -> Tuple[Point, ...]:
        return self.first + self.second
