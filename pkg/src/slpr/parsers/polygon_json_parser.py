"""
JSON-lines grammar: one object per line with any number of vertices.
"""
import math
from typing import List, Optional

from pydantic import BaseModel, ValidationError

from ..exceptions import ParseError
from ..models.detection import AnnotationRecord, Detection
from ..models.geometry import Polygon
from .base_parser import DONT_CARE_MARK, BaseAnnotationParser


class PolygonLine(BaseModel):
    polygon: List[List[float]]
    score: Optional[float] = None
    dont_care: bool = False
    transcription: Optional[str] = None


class PolygonJsonParser(BaseAnnotationParser):
    """``{"polygon": [[x, y], ...], "score": 0.9}``; coordinates are kept as floats."""

    def __init__(self):
        super().__init__("polygon_json")

    def can_parse(self, line: str) -> bool:
        return line.lstrip().startswith("{")

    def parse_line(self, line: str) -> AnnotationRecord:
        try:
            payload = PolygonLine.model_validate_json(line)
        except ValidationError as e:
            raise ParseError(f"polygon_json: {e.errors()[0]['msg']} in {line[:80]!r}") from e
        coords = []
        for vertex in payload.polygon:
            if len(vertex) != 2 or not all(math.isfinite(v) for v in vertex):
                raise ParseError(f"polygon_json: bad vertex {vertex}")
            coords.extend(vertex)
        trailing = repr(payload.score) if payload.score is not None else payload.transcription
        return AnnotationRecord(
            polygon=self._region(coords),
            dont_care=payload.dont_care or trailing == DONT_CARE_MARK,
            transcription=trailing,
        )

    def format_polygon(self, polygon: Polygon, trailing: Optional[str]) -> str:
        line = PolygonLine(polygon=polygon.to_list(), transcription=trailing)
        return line.model_dump_json(exclude_none=True, exclude_defaults=True)

    def format_record(self, record: AnnotationRecord) -> str:
        line = PolygonLine(polygon=record.polygon.to_list(), dont_care=record.dont_care,
                           transcription=record.transcription)
        return line.model_dump_json(exclude_none=True, exclude_defaults=True)

    def format_detection(self, det: Detection) -> str:
        line = PolygonLine(polygon=det.polygon.to_list(), score=det.score)
        return line.model_dump_json(exclude_none=True)
