# Parsers package
from .base_parser import BaseAnnotationParser
from .ctw1500_parser import Ctw1500Parser
from .icdar15_parser import Icdar15Parser
from .polygon_json_parser import PolygonJsonParser
from .target_parser import format_target_document, format_target_line, parse_target_document, parse_target_line

__all__ = ['BaseAnnotationParser', 'Ctw1500Parser', 'Icdar15Parser', 'PolygonJsonParser',
           'format_target_document', 'format_target_line', 'parse_target_document', 'parse_target_line']
