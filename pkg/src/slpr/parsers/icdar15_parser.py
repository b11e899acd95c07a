"""
ICDAR 2015 incidental text grammar: ``x1,y1,x2,y2,x3,y3,x4,y4,transcription``.
"""
from typing import Optional

from ..exceptions import ParseError
from ..models.detection import AnnotationRecord
from ..models.geometry import Polygon
from .base_parser import BaseAnnotationParser


class Icdar15Parser(BaseAnnotationParser):
    """Quadrilateral records; the transcription may itself contain commas."""

    vertex_count = 4
    coordinate_fields = 8

    def __init__(self):
        super().__init__("icdar15")

    def can_parse(self, line: str) -> bool:
        fields = line.split(",")
        if len(fields) < self.coordinate_fields:
            return False
        if not all(self._is_number(f) for f in fields[: self.coordinate_fields]):
            return False
        # 32+ numeric fields belong to the curved grammar
        return not (len(fields) >= 32 and all(self._is_number(f) for f in fields[:32]))

    def parse_line(self, line: str) -> AnnotationRecord:
        fields = line.strip().split(",", self.coordinate_fields)
        if len(fields) < self.coordinate_fields:
            raise ParseError(f"icdar15: expected 8 coordinates, got {len(fields)} fields in {line!r}")
        coords = self._numbers(fields[: self.coordinate_fields])
        trailing = fields[self.coordinate_fields].strip() if len(fields) > self.coordinate_fields else None
        return self._record(self._region(coords), trailing)

    def format_polygon(self, polygon: Polygon, trailing: Optional[str]) -> str:
        fields = [str(v) for v in self._rounded(polygon)]
        if trailing is not None:
            fields.append(trailing)
        return ",".join(fields)
