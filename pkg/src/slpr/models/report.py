"""
Evaluation results: per-image matching statistics and the corpus report.
"""
from typing import Dict, List

from pydantic import BaseModel, Field


class MatchRecord(BaseModel):
    image_id: str = ""
    detection_id: int
    gt_index: int
    iou: float


class ImageStats(BaseModel):
    """Matching outcome for one image."""

    image_id: str = ""
    matched: int = 0
    valid_gt: int = 0
    counted_detections: int = 0
    excluded_detections: int = 0
    matches: List[MatchRecord] = Field(default_factory=list)


class EvalReport(BaseModel):
    """Precision / recall / Hmean over a corpus with the underlying counts."""

    precision: float
    recall: float
    hmean: float
    matched: int
    total_gt: int
    total_detections: int
    iou_threshold: float = 0.5
    matches: List[MatchRecord] = Field(default_factory=list)
    per_image: Dict[str, ImageStats] = Field(default_factory=dict)

    def summary_lines(self) -> List[str]:
        """Line-oriented ``key: value`` rendering."""
        return [
            f"precision: {self.precision:.3f}",
            f"recall: {self.recall:.3f}",
            f"hmean: {self.hmean:.3f}",
            f"matched: {self.matched}",
            f"total_gt: {self.total_gt}",
            f"total_detections: {self.total_detections}",
            f"iou_threshold: {self.iou_threshold}",
            f"images: {len(self.per_image)}",
        ]
