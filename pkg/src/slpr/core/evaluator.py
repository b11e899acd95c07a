"""
ICDAR-style detection evaluation: don't-care filtering, greedy one-to-one
matching and precision / recall / Hmean aggregation.
"""
import logging
from typing import Mapping, Optional, Sequence

from ..models.detection import Detection, GroundTruth
from ..models.report import EvalReport, ImageStats, MatchRecord
from .geom import polygon_iou_many
from .workers import parallel_map

logger = logging.getLogger(__name__)

DEFAULT_IOU_THRESHOLD = 0.5


def hmean(precision: float, recall: float) -> float:
    """Harmonic mean 2PR/(P+R), 0 when P + R = 0."""
    if precision + recall <= 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def match_image(dets: Sequence[Detection], gts: Sequence[GroundTruth],
                iou_threshold: float = DEFAULT_IOU_THRESHOLD, image_id: str = "") -> ImageStats:
    """
    Match one image.

    Detections overlapping a don't-care region by more than the threshold are
    dropped from counting; the rest, in descending score (ties by id), take
    the highest-IoU unmatched valid gt whose IoU exceeds the threshold.

    Args:
        dets: Detections of the image
        gts: Ground-truth regions, don't-care ones included
        iou_threshold: Match threshold in (0, 1); equality does not match
        image_id: Identifier copied into the stats and match records

    Returns:
        ImageStats with counts and the one-to-one matches
    """
    if not 0.0 < iou_threshold < 1.0:
        raise ValueError(f"IoU threshold must be in (0, 1), got {iou_threshold}")

    valid = [(index, gt) for index, gt in enumerate(gts) if not gt.dont_care]
    ignored = [gt.polygon for gt in gts if gt.dont_care]

    counted = []
    excluded = 0
    for det in sorted(dets, key=lambda d: d.sort_key):
        if ignored and (polygon_iou_many(det.polygon, ignored) > iou_threshold).any():
            excluded += 1
            continue
        counted.append(det)

    taken = set()
    matches = []
    valid_polygons = [gt.polygon for _, gt in valid]
    for det in counted:
        if not valid_polygons:
            break
        overlaps = polygon_iou_many(det.polygon, valid_polygons)
        best_iou, best_index = iou_threshold, None
        for (index, _), iou in zip(valid, overlaps):
            if index not in taken and iou > best_iou:
                best_iou, best_index = float(iou), index
        if best_index is not None:
            taken.add(best_index)
            matches.append(MatchRecord(image_id=image_id, detection_id=det.id, gt_index=best_index, iou=best_iou))

    return ImageStats(
        image_id=image_id,
        matched=len(matches),
        valid_gt=len(valid),
        counted_detections=len(counted),
        excluded_detections=excluded,
        matches=matches,
    )


def aggregate(stats: Sequence[ImageStats], iou_threshold: float = DEFAULT_IOU_THRESHOLD) -> EvalReport:
    """
    Corpus totals.

    Args:
        stats: Per-image results of ``match_image``
        iou_threshold: Threshold recorded in the report

    Returns:
        EvalReport; a zero denominator gives precision or recall 0
    """
    if not stats:
        logger.warning("Aggregating an empty corpus")
    matched = sum(s.matched for s in stats)
    total_gt = sum(s.valid_gt for s in stats)
    total_dets = sum(s.counted_detections for s in stats)
    precision = matched / total_dets if total_dets else 0.0
    recall = matched / total_gt if total_gt else 0.0
    return EvalReport(
        precision=precision,
        recall=recall,
        hmean=hmean(precision, recall),
        matched=matched,
        total_gt=total_gt,
        total_detections=total_dets,
        iou_threshold=iou_threshold,
        matches=[m for s in stats for m in s.matches],
        per_image={s.image_id: s for s in stats},
    )


def evaluate_corpus(gt_by_image: Mapping[str, Sequence[GroundTruth]],
                    dets_by_image: Mapping[str, Sequence[Detection]],
                    iou_threshold: float = DEFAULT_IOU_THRESHOLD,
                    workers: Optional[int] = None) -> EvalReport:
    """
    Match every image on the worker pool and aggregate.

    An image present on only one side is evaluated against an empty list.

    Args:
        gt_by_image: Ground truth keyed by image id
        dets_by_image: Detections keyed by image id
        iou_threshold: Match threshold in (0, 1)
        workers: Worker threads; None reads SLPR_THREADS, 0 means one per CPU

    Returns:
        Aggregated EvalReport
    """
    image_ids = sorted(set(gt_by_image) | set(dets_by_image))
    missing = [i for i in image_ids if i not in dets_by_image]
    if missing:
        logger.info(f"{len(missing)} images have no detections")

    def run(image_id: str) -> ImageStats:
        return match_image(dets_by_image.get(image_id, ()), gt_by_image.get(image_id, ()), iou_threshold, image_id)

    stats = parallel_map(run, image_ids, workers)
    report = aggregate(stats, iou_threshold)
    logger.info(f"Evaluated {len(image_ids)} images: P={report.precision:.3f} R={report.recall:.3f} "
                f"H={report.hmean:.3f}")
    return report
