# Models package
from .geometry import AxisRect, Point, Polygon
from .target import ChainAxis, PointChains, SlidingAxis, SlprTarget
from .detection import AnnotationRecord, Detection, GroundTruth
from .config import LossConfig, RestoreConfig, RestoreMethod
from .report import EvalReport, ImageStats, MatchRecord
from .shape import ShapeKind, ShapeSpec

__all__ = [
    'AxisRect', 'Point', 'Polygon',
    'ChainAxis', 'PointChains', 'SlidingAxis', 'SlprTarget',
    'AnnotationRecord', 'Detection', 'GroundTruth',
    'LossConfig', 'RestoreConfig', 'RestoreMethod',
    'EvalReport', 'ImageStats', 'MatchRecord',
    'ShapeKind', 'ShapeSpec',
]
