"""
Request bodies for the HTTP API.
"""
from typing import List, Literal, Optional

from pydantic import BaseModel, Field

from config.settings import settings

from ..models.config import RestoreMethod
from ..models.detection import Detection, GroundTruth
from ..models.geometry import Polygon

Vertices = List[List[float]]


class EncodeRequest(BaseModel):
    polygon: Vertices
    n: int = Field(default_factory=lambda: settings.num_lines, ge=1)


class RestoreRequest(BaseModel):
    target: List[float] = Field(..., description="x_min, y_min, x_max, y_max, x_v..., y_h...")
    method: RestoreMethod = Field(default_factory=lambda: RestoreMethod(settings.restore_method))
    k: float = Field(default_factory=lambda: settings.aspect_threshold, gt=0.0, le=1.0)


class DetectionIn(BaseModel):
    polygon: Vertices
    score: float = Field(default=1.0, ge=0.0, le=1.0)
    id: Optional[int] = None

    def to_detection(self, index: int) -> Detection:
        return Detection(polygon=Polygon.from_coords(self.polygon), score=self.score,
                         id=index if self.id is None else self.id)


class GroundTruthIn(BaseModel):
    polygon: Vertices
    dont_care: bool = False

    def to_ground_truth(self) -> GroundTruth:
        return GroundTruth(polygon=Polygon.from_coords(self.polygon), dont_care=self.dont_care)


class NmsRequest(BaseModel):
    detections: List[DetectionIn]
    mode: Literal["nms", "pnms"] = "pnms"
    threshold: float = Field(default_factory=lambda: settings.nms_threshold, gt=0.0, lt=1.0)


class EvaluateRequest(BaseModel):
    detections: List[DetectionIn]
    ground_truths: List[GroundTruthIn]
    iou_threshold: float = Field(default_factory=lambda: settings.eval_iou_threshold, gt=0.0, lt=1.0)
