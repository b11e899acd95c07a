"""
Greedy duplicate removal over scored detections.

``nms`` measures overlap on the axis rectangles, ``pnms`` on the polygons.
"""
import logging
from typing import Callable, List, Sequence

import numpy as np

from ..models.detection import Detection
from .geom import polygon_iou_many, rect_iou

logger = logging.getLogger(__name__)

OverlapFn = Callable[[Detection, List[Detection]], np.ndarray]


def _check_threshold(iou_threshold: float):
    if not 0.0 < iou_threshold < 1.0:
        raise ValueError(f"IoU threshold must be in (0, 1), got {iou_threshold}")


def _greedy(dets: Sequence[Detection], iou_threshold: float, overlap: OverlapFn) -> List[Detection]:
    remaining = sorted(dets, key=lambda d: d.sort_key)
    kept: List[Detection] = []
    while remaining:
        top, rest = remaining[0], remaining[1:]
        kept.append(top)
        if not rest:
            break
        overlaps = overlap(top, rest)
        # strict ">" : an overlap equal to the threshold survives
        remaining = [d for d, o in zip(rest, overlaps) if not o > iou_threshold]
    return kept


def _rect_overlap(top: Detection, rest: List[Detection]) -> np.ndarray:
    return np.array([rect_iou(top.rect, d.rect) for d in rest], dtype=float)


def _polygon_overlap(top: Detection, rest: List[Detection]) -> np.ndarray:
    return polygon_iou_many(top.polygon, [d.polygon for d in rest])


def nms(dets: Sequence[Detection], iou_threshold: float) -> List[Detection]:
    """
    Rectangle NMS.

    Args:
        dets: Scored detections
        iou_threshold: Overlap above which the lower-ranked detection is dropped, in (0, 1)

    Returns:
        Kept detections in keep order (score descending, id ascending)
    """
    _check_threshold(iou_threshold)
    kept = _greedy(dets, iou_threshold, _rect_overlap)
    logger.debug(f"NMS@{iou_threshold}: kept {len(kept)} of {len(dets)}")
    return kept


def pnms(dets: Sequence[Detection], iou_threshold: float) -> List[Detection]:
    """
    Polygonal NMS: the same greedy loop, overlap measured by polygon IoU.

    Args:
        dets: Scored detections
        iou_threshold: Overlap above which the lower-ranked detection is dropped, in (0, 1)

    Returns:
        Kept detections in keep order
    """
    _check_threshold(iou_threshold)
    kept = _greedy(dets, iou_threshold, _polygon_overlap)
    logger.debug(f"PNMS@{iou_threshold}: kept {len(kept)} of {len(dets)}")
    return kept


def suppress(dets: Sequence[Detection], iou_threshold: float, mode: str = "nms") -> List[Detection]:
    """
    Dispatch on ``mode`` ("nms" or "pnms", case-insensitive).

    Raises:
        ValueError: Unknown mode or threshold outside (0, 1)
    """
    mode = mode.lower()
    if mode == "nms":
        return nms(dets, iou_threshold)
    if mode == "pnms":
        return pnms(dets, iou_threshold)
    raise ValueError(f"Unknown suppression mode: {mode}")
