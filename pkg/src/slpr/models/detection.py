"""
Scored detections, ground-truth regions and parsed annotation records.
"""
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

from ..exceptions import DegeneratePolygon, InvalidScore
from .geometry import AxisRect, Polygon

# Tolerance for the rect-contains-polygon invariant.
RECT_TOLERANCE = 1e-6


def _bbox(polygon: Polygon) -> AxisRect:
    xs = polygon.coords[:, 0]
    ys = polygon.coords[:, 1]
    return AxisRect(float(xs.min()), float(ys.min()), float(xs.max()), float(ys.max()))


@dataclass(frozen=True)
class Detection:
    """A polygon with its rectangle and confidence score."""

    polygon: Polygon
    score: float = 1.0
    id: int = 0
    rect: Optional[AxisRect] = None

    def __post_init__(self):
        if not (math.isfinite(self.score) and 0.0 <= self.score <= 1.0):
            raise InvalidScore(f"Detection {self.id} has score {self.score} outside [0, 1]")
        bbox = _bbox(self.polygon)
        if self.rect is None:
            object.__setattr__(self, "rect", bbox)
        elif not self.rect.contains_rect(bbox, RECT_TOLERANCE):
            raise DegeneratePolygon(f"Detection {self.id}: rect {self.rect} does not contain polygon bbox {bbox}")

    @property
    def sort_key(self):
        """Canonical order: score descending, id ascending."""
        return (-self.score, self.id)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "score": self.score,
            "polygon": self.polygon.to_list(),
            "rect": list(self.rect.as_tuple()),
        }


@dataclass(frozen=True)
class GroundTruth:
    polygon: Polygon
    dont_care: bool = False


@dataclass(frozen=True)
class AnnotationRecord:
    """One parsed line of an annotation or detection file."""

    polygon: Polygon
    dont_care: bool = False
    transcription: Optional[str] = None

    def to_ground_truth(self) -> GroundTruth:
        return GroundTruth(polygon=self.polygon, dont_care=self.dont_care)

    def score(self, default: float = 1.0) -> float:
        """Interpret the trailing field as a detection score when it is a number in [0, 1]."""
        if self.transcription is None:
            return default
        try:
            value = float(self.transcription)
        except ValueError:
            return default
        return value if 0.0 <= value <= 1.0 else default
