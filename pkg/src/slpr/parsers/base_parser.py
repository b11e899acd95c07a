"""
Base parser class for annotation and detection text grammars.
"""
import logging
import math
from abc import ABC, abstractmethod
from typing import Iterable, List, Optional, Sequence

from ..core.geom import validate
from ..exceptions import DegeneratePolygon, FormatError, ParseError
from ..models.detection import AnnotationRecord, Detection
from ..models.geometry import Polygon

logger = logging.getLogger(__name__)

DONT_CARE_MARK = "###"
BOM = "\ufeff"


class BaseAnnotationParser(ABC):
    """Abstract base class for one line-oriented region grammar."""

    # required vertex count on output, None for any
    vertex_count: Optional[int] = None

    def __init__(self, format_name: str):
        self.format_name = format_name
        self.logger = logging.getLogger(f"{__name__}.{format_name}")

    @abstractmethod
    def can_parse(self, line: str) -> bool:
        """
        Check if this parser recognises the given line.

        Args:
            line: One stripped, non-empty line

        Returns:
            True if the line looks like this grammar
        """
        pass

    @abstractmethod
    def parse_line(self, line: str) -> AnnotationRecord:
        """
        Parse one record.

        Raises:
            ParseError: wrong field count or non-numeric coordinates
            DegeneratePolygon: coordinates do not form a valid region
        """
        pass

    @abstractmethod
    def format_polygon(self, polygon: Polygon, trailing: Optional[str]) -> str:
        """Serialise one polygon plus its trailing field (no newline)."""
        pass

    def format_record(self, record: AnnotationRecord) -> str:
        trailing = DONT_CARE_MARK if record.dont_care else record.transcription
        return self.format_polygon(record.polygon, trailing)

    def format_detection(self, det: Detection) -> str:
        return self.format_polygon(det.polygon, repr(float(det.score)))

    def parse_document(self, text: str) -> List[AnnotationRecord]:
        """Parse every non-blank line; errors carry the 1-based line number."""
        records = []
        for number, line in enumerate(text.lstrip(BOM).splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(self.parse_line(line))
            except ParseError as e:
                raise ParseError(f"line {number}: {e}") from e
            except DegeneratePolygon as e:
                raise DegeneratePolygon(f"line {number}: {e}") from e
        self.logger.debug(f"Parsed {len(records)} {self.format_name} records")
        return records

    def write_detections(self, dets: Iterable[Detection]) -> bytes:
        """One LF-terminated line per detection, UTF-8."""
        return "".join(self.format_detection(det) + "\n" for det in dets).encode("utf-8")

    def write_records(self, records: Iterable[AnnotationRecord]) -> bytes:
        return "".join(self.format_record(record) + "\n" for record in records).encode("utf-8")

    # helpers shared by the concrete grammars

    def _numbers(self, fields: Sequence[str]) -> List[float]:
        values = []
        for field in fields:
            try:
                value = float(field)
            except ValueError:
                raise ParseError(f"{self.format_name}: non-numeric field {field!r}") from None
            if not math.isfinite(value):
                raise ParseError(f"{self.format_name}: non-finite field {field!r}")
            values.append(value)
        return values

    @staticmethod
    def _is_number(field: str) -> bool:
        try:
            return math.isfinite(float(field))
        except ValueError:
            return False

    @staticmethod
    def _region(coords: Sequence[float]) -> Polygon:
        polygon = Polygon.from_flat(coords)
        validate(polygon)
        return polygon

    def _rounded(self, polygon: Polygon) -> List[int]:
        if self.vertex_count is not None and len(polygon) != self.vertex_count:
            raise FormatError(
                f"{self.format_name} requires {self.vertex_count} vertices, got {len(polygon)}"
            )
        values = [int(round(v)) for v in polygon.to_flat()]
        try:
            self._region(values)
        except DegeneratePolygon as e:
            raise FormatError(f"{self.format_name}: polygon degenerates at integer precision: {e}") from e
        return values

    @staticmethod
    def _record(polygon: Polygon, trailing: Optional[str]) -> AnnotationRecord:
        if trailing is None:
            return AnnotationRecord(polygon=polygon)
        if trailing == DONT_CARE_MARK:
            return AnnotationRecord(polygon=polygon, dont_care=True, transcription=trailing)
        return AnnotationRecord(polygon=polygon, transcription=trailing)
