"""
CTW1500 curved text grammar.

``x_min,y_min,x_max,y_max`` followed by 14 (dx, dy) offsets relative to
(x_min, y_min); an optional 33rd field holds the transcription (or the score
in detection files).
"""
from typing import List, Optional, Tuple

from ..exceptions import ParseError
from ..models.detection import AnnotationRecord
from ..models.geometry import Polygon
from .base_parser import BaseAnnotationParser

NUM_VERTICES = 14
NUM_FIELDS = 4 + 2 * NUM_VERTICES
# pixels the stored box may differ from the vertex extent
BOX_TOLERANCE = 1.0


class Ctw1500Parser(BaseAnnotationParser):
    vertex_count = NUM_VERTICES

    def __init__(self):
        super().__init__("ctw1500")

    def can_parse(self, line: str) -> bool:
        fields = line.split(",")
        return len(fields) >= NUM_FIELDS and all(self._is_number(f) for f in fields[:NUM_FIELDS])

    def parse_line(self, line: str) -> AnnotationRecord:
        fields = line.strip().split(",", NUM_FIELDS)
        if len(fields) < NUM_FIELDS:
            raise ParseError(f"ctw1500: expected {NUM_FIELDS} fields, got {len(fields)}")
        values = self._numbers(fields[:NUM_FIELDS])
        x_min, y_min, x_max, y_max = values[:4]
        if x_max < x_min or y_max < y_min:
            raise ParseError(f"ctw1500: inverted box ({x_min}, {y_min}, {x_max}, {y_max})")
        offsets = values[4:]
        coords = []
        for dx, dy in zip(offsets[0::2], offsets[1::2]):
            coords.extend((x_min + dx, y_min + dy))
        self._check_box((x_min, y_min, x_max, y_max), coords)
        trailing = fields[NUM_FIELDS].strip() if len(fields) > NUM_FIELDS else None
        return self._record(self._region(coords), trailing)

    def _check_box(self, box: Tuple[float, float, float, float], coords: List[float]) -> bool:
        """Warn when the stored box disagrees with the extent of the offset vertices."""
        xs, ys = coords[0::2], coords[1::2]
        extent = (min(xs), min(ys), max(xs), max(ys))
        if all(abs(a - b) <= BOX_TOLERANCE for a, b in zip(box, extent)):
            return True
        self.logger.warning(f"ctw1500: box {box} disagrees with vertex extent {extent}")
        return False

    def format_polygon(self, polygon: Polygon, trailing: Optional[str]) -> str:
        values = self._rounded(polygon)
        xs, ys = values[0::2], values[1::2]
        x_min, y_min = min(xs), min(ys)
        fields = [x_min, y_min, max(xs), max(ys)]
        for x, y in zip(xs, ys):
            fields.extend((x - x_min, y - y_min))
        out = [str(v) for v in fields]
        if trailing is not None:
            out.append(trailing)
        return ",".join(out)
