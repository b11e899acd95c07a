"""
API routes for the SLPR toolkit.
"""
import logging
from datetime import datetime

from fastapi import APIRouter

from .. import __version__
from ..core.codec import decoded_points, encode
from ..core.evaluator import aggregate, match_image
from ..core.format_registry import format_registry
from ..core.restore import restore
from ..core.suppress import suppress
from ..models.config import RestoreConfig
from ..models.geometry import Polygon
from ..models.report import EvalReport
from ..models.target import SlprTarget
from .schemas import EncodeRequest, EvaluateRequest, NmsRequest, RestoreRequest

logger = logging.getLogger(__name__)

router = APIRouter()


@router.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "timestamp": datetime.now().isoformat()}


@router.get("/status")
async def status_check():
    """Status check endpoint."""
    return {"status": "running", "version": __version__}


@router.get("/formats")
async def supported_formats():
    """Annotation grammars understood by the file workflows."""
    return {"supported_formats": format_registry.list_formats()}


@router.post("/encode")
async def encode_polygon(request: EncodeRequest):
    """Polygon -> SLPR target vector plus its decoded points."""
    target = encode(Polygon.from_coords(request.polygon), request.n)
    return {
        "n": target.n,
        "rect": list(target.rect.as_tuple()),
        "target": list(target.to_vector()),
        "decoded_points": [list(p.as_tuple()) for p in decoded_points(target)],
    }


@router.post("/restore")
async def restore_target(request: RestoreRequest):
    """SLPR target vector -> polygon."""
    cfg = RestoreConfig(method=request.method, k=request.k)
    polygon = restore(SlprTarget.from_vector(request.target), cfg)
    return {"method": cfg.method.value, "polygon": polygon.to_list()}


@router.post("/nms")
async def suppress_detections(request: NmsRequest):
    dets = [d.to_detection(i) for i, d in enumerate(request.detections)]
    kept = suppress(dets, request.threshold, request.mode)
    logger.info(f"{request.mode}@{request.threshold}: kept {len(kept)} of {len(dets)}")
    return {"total": len(dets), "kept": [d.to_dict() for d in kept]}


@router.post("/evaluate", response_model=EvalReport)
async def evaluate_detections(request: EvaluateRequest):
    """Single-image evaluation."""
    dets = [d.to_detection(i) for i, d in enumerate(request.detections)]
    gts = [g.to_ground_truth() for g in request.ground_truths]
    stats = match_image(dets, gts, request.iou_threshold, image_id="request")
    return aggregate([stats], request.iou_threshold)
