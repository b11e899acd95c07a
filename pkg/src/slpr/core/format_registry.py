"""
Registry of annotation grammars plus the file-level helpers built on it.
"""
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional

from ..exceptions import FormatError
from ..models.detection import AnnotationRecord, Detection
from ..parsers.base_parser import BOM, BaseAnnotationParser
from ..parsers.ctw1500_parser import Ctw1500Parser
from ..parsers.icdar15_parser import Icdar15Parser
from ..parsers.polygon_json_parser import PolygonJsonParser

logger = logging.getLogger(__name__)

FILE_PREFIXES = ("gt_", "res_", "tgt_")


class FormatRegistry:
    """Factory for looking up and sniffing annotation grammars."""

    def __init__(self):
        self._parsers: Dict[str, BaseAnnotationParser] = {}
        self._register_default_parsers()

    def _register_default_parsers(self):
        # sniffing order: most specific grammar first
        self.register_parser("polygon_json", PolygonJsonParser())
        self.register_parser("ctw1500", Ctw1500Parser())
        self.register_parser("icdar15", Icdar15Parser())
        logger.debug("Registered default grammars (polygon_json, ctw1500, icdar15)")

    def register_parser(self, name: str, parser: BaseAnnotationParser):
        if not isinstance(parser, BaseAnnotationParser):
            raise ValueError("Parser must inherit from BaseAnnotationParser")
        self._parsers[name] = parser
        logger.debug(f"Registered grammar: {name}")

    def get_parser(self, name: str) -> BaseAnnotationParser:
        parser = self._parsers.get(name)
        if parser is None:
            raise FormatError(f"Unknown format {name!r}; supported: {', '.join(self.list_formats())}")
        return parser

    def list_formats(self) -> List[str]:
        return sorted(self._parsers)

    def find_parser_for_line(self, line: str) -> Optional[BaseAnnotationParser]:
        """First registered grammar whose ``can_parse`` accepts the line."""
        line = line.lstrip(BOM).strip()
        for name, parser in self._parsers.items():
            if parser.can_parse(line):
                logger.debug(f"Line sniffed as {name}")
                return parser
        return None

    def find_parser_for_text(self, text: str) -> Optional[BaseAnnotationParser]:
        for line in text.lstrip(BOM).splitlines():
            if line.strip():
                return self.find_parser_for_line(line)
        return None


# Global format registry instance
format_registry = FormatRegistry()


def parse_icdar15(line: str) -> AnnotationRecord:
    return format_registry.get_parser("icdar15").parse_line(line.lstrip(BOM))


def parse_ctw1500(line: str) -> AnnotationRecord:
    return format_registry.get_parser("ctw1500").parse_line(line)


def write_detections(dets: Iterable[Detection], format_name: str) -> bytes:
    """Serialise detections in one of the registered grammars."""
    return format_registry.get_parser(format_name).write_detections(dets)


def read_records(path: Path, format_name: Optional[str] = None) -> List[AnnotationRecord]:
    """Parse an annotation or detection file; the grammar is sniffed when not given."""
    text = Path(path).read_text(encoding="utf-8-sig")
    if format_name:
        parser = format_registry.get_parser(format_name)
    else:
        parser = format_registry.find_parser_for_text(text)
        if parser is None:
            if not text.strip():
                return []
            raise FormatError(f"Cannot recognise the grammar of {path}")
    return parser.parse_document(text)


def image_id(path: Path) -> str:
    """``gt_img_1.txt`` / ``res_img_1.txt`` / ``tgt_img_1.txt`` -> ``img_1``."""
    stem = Path(path).stem
    for prefix in FILE_PREFIXES:
        if stem.startswith(prefix):
            return stem[len(prefix):]
    return stem


def gt_filename(image: str) -> str:
    return f"gt_{image}.txt"


def res_filename(image: str) -> str:
    return f"res_{image}.txt"


def tgt_filename(image: str) -> str:
    return f"tgt_{image}.txt"
