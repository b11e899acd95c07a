"""
Regression loss kernels for SLPR targets.

Coordinates are raw pixels; no anchor-relative normalisation is applied.
Every kernel accepts scalars or numpy arrays.
"""
import logging
from typing import Dict, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from ..exceptions import InvalidRect, SizeMismatch
from ..models.config import LossConfig
from ..models.geometry import AxisRect
from ..models.target import SlprTarget

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
Coords = Union[SlprTarget, Tuple[np.ndarray, np.ndarray]]

# residuals this close to |d| = 1 are skipped by the finite-difference check
KINK_MARGIN = 1e-4


def smooth_l1(z: ArrayLike, z_star: ArrayLike) -> ArrayLike:
    """0.5 d^2 if |d| < 1 else |d| - 0.5, with d = z - z*."""
    d = np.asarray(z, dtype=float) - np.asarray(z_star, dtype=float)
    ad = np.abs(d)
    out = np.where(ad < 1.0, 0.5 * d * d, ad - 0.5)
    return float(out) if out.ndim == 0 else out


def smooth_l1_grad(z: ArrayLike, z_star: ArrayLike) -> ArrayLike:
    """Derivative w.r.t. z: d clipped to [-1, 1]."""
    d = np.asarray(z, dtype=float) - np.asarray(z_star, dtype=float)
    out = np.clip(d, -1.0, 1.0)
    return float(out) if out.ndim == 0 else out


def _coords(value: Coords) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(value, SlprTarget):
        return np.asarray(value.x_v, dtype=float), np.asarray(value.y_h, dtype=float)
    x_v, y_h = value
    return np.asarray(x_v, dtype=float).ravel(), np.asarray(y_h, dtype=float).ravel()


def _residual_pairs(pred: Coords, gt: Coords, cfg: Optional[LossConfig]):
    px, py = _coords(pred)
    gx, gy = _coords(gt)
    n = cfg.n if cfg is not None else len(gx) // 2
    expected = 2 * n
    if n < 1 or any(len(v) != expected for v in (px, py, gx, gy)):
        raise SizeMismatch(
            f"Expected {expected} coordinates per direction, got pred=({len(px)}, {len(py)}) gt=({len(gx)}, {len(gy)})"
        )
    return px, py, gx, gy, n


def slpr_loss(pred: Coords, gt: Coords, cfg: Optional[LossConfig] = None) -> float:
    """(1/4n) [sum_j L(x_vj, x*_vj) + sum_i L(y_hi, y*_hi)]."""
    px, py, gx, gy, n = _residual_pairs(pred, gt, cfg)
    return float((np.sum(smooth_l1(px, gx)) + np.sum(smooth_l1(py, gy))) / (4 * n))


def slpr_loss_grad(pred: Coords, gt: Coords, cfg: Optional[LossConfig] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Gradient of ``slpr_loss`` w.r.t. the predicted (x_v, y_h)."""
    px, py, gx, gy, n = _residual_pairs(pred, gt, cfg)
    return smooth_l1_grad(px, gx) / (4 * n), smooth_l1_grad(py, gy) / (4 * n)


def ctw_weights(rect: AxisRect, cfg: LossConfig) -> Tuple[float, float]:
    """
    (weight of the x_v sum, weight of the y_h sum) for the CTW variant:
    lambda_hw * I(h/w > k) and I(h/w < 1/k). Both are active in between.
    """
    if not isinstance(rect, AxisRect):
        raise InvalidRect(f"Expected AxisRect, got {type(rect).__name__}")
    aspect = rect.aspect
    x_weight = cfg.lambda_hw if aspect > cfg.k else 0.0
    y_weight = 1.0 if aspect < 1.0 / cfg.k else 0.0
    return x_weight, y_weight


def slpr_loss_ctw(pred: Coords, gt: Coords, rect: AxisRect, cfg: Optional[LossConfig] = None) -> float:
    """Orientation-gated variant used for curved text."""
    cfg = cfg or LossConfig()
    px, py, gx, gy, n = _residual_pairs(pred, gt, cfg)
    x_weight, y_weight = ctw_weights(rect, cfg)
    total = x_weight * np.sum(smooth_l1(px, gx)) + y_weight * np.sum(smooth_l1(py, gy))
    return float(total / (4 * n))


def slpr_loss_ctw_grad(pred: Coords, gt: Coords, rect: AxisRect,
                       cfg: Optional[LossConfig] = None) -> Tuple[np.ndarray, np.ndarray]:
    cfg = cfg or LossConfig()
    px, py, gx, gy, n = _residual_pairs(pred, gt, cfg)
    x_weight, y_weight = ctw_weights(rect, cfg)
    return (x_weight * smooth_l1_grad(px, gx) / (4 * n),
            y_weight * smooth_l1_grad(py, gy) / (4 * n))


def combine_losses(rpn_cls: float, rpn_box: float, cls: float, box: float, slpr_box: float,
                   cfg: Optional[LossConfig] = None) -> float:
    """
    Multi-task total from externally computed components:
    L = L_rcls + lambda_r L_rb + L_cls + lambda_b L_b + lambda_s L_slprb.
    """
    cfg = cfg or LossConfig()
    rpn = rpn_cls + cfg.lambda_r * rpn_box
    second_stage = cls + cfg.lambda_b * box + cfg.lambda_s * slpr_box
    return float(rpn + second_stage)


class GradientCheckReport(BaseModel):
    samples: int
    checked: int
    skipped: int
    max_error: float
    tolerance: float
    value_checks: Dict[str, bool] = Field(default_factory=dict)
    passed: bool


def _central_difference(fn, px: np.ndarray, py: np.ndarray, step: float) -> Tuple[np.ndarray, np.ndarray]:
    grads = []
    for which in (0, 1):
        base = (px, py)[which]
        out = np.empty_like(base)
        for i in range(base.size):
            plus, minus = base.copy(), base.copy()
            plus[i] += step
            minus[i] -= step
            args_plus = (plus, py) if which == 0 else (px, plus)
            args_minus = (minus, py) if which == 0 else (px, minus)
            out[i] = (fn(args_plus) - fn(args_minus)) / (2 * step)
        grads.append(out)
    return grads[0], grads[1]


def _value_checks(cfg: LossConfig) -> Dict[str, bool]:
    n = cfg.n
    zeros = np.zeros(2 * n)
    half = np.full(2 * n, 0.5)
    checks = {
        "smooth_l1_points": bool(np.allclose(smooth_l1(np.array([0.0, 0.5, 1.0, 2.0]), 0.0), [0.0, 0.125, 0.5, 1.5])),
        "slpr_loss_half_residuals": abs(slpr_loss((half, half), (zeros, zeros), cfg) - 0.125) < 1e-12,
    }
    # indicator behaviour is pinned at the published k = 0.8, lambda_hw = 4
    reference = LossConfig(n=n)
    tall = ctw_weights(AxisRect(0, 0, 1, 2), reference)
    wide = ctw_weights(AxisRect(0, 0, 2, 1), reference)
    checks["ctw_indicators"] = (
        tall == (4.0, 0.0)
        and wide == (0.0, 1.0)
        and slpr_loss_ctw((zeros, zeros), (zeros, zeros), AxisRect(0, 0, 1, 1), reference) == 0.0
    )
    return checks


def run_gradient_check(samples: int = 1000, seed: int = 0, tolerance: float = 1e-5,
                       step: float = 1e-6, cfg: Optional[LossConfig] = None) -> GradientCheckReport:
    """
    Compare analytic gradients of both SLPR losses against central finite
    differences on random residual vectors; coordinates whose residual lies
    within KINK_MARGIN of |d| = 1 are skipped.
    """
    cfg = cfg or LossConfig()
    rng = np.random.default_rng(seed)
    n = cfg.n
    max_error, checked, skipped = 0.0, 0, 0

    for _ in range(samples):
        gx, gy = rng.uniform(0.0, 100.0, 2 * n), rng.uniform(0.0, 100.0, 2 * n)
        px, py = gx + rng.normal(0.0, 1.5, 2 * n), gy + rng.normal(0.0, 1.5, 2 * n)
        rect = AxisRect(0.0, 0.0, 1.0, float(rng.choice([0.5, 1.0, 2.0, rng.uniform(0.2, 5.0)])))

        mask = np.concatenate([
            np.abs(np.abs(px - gx) - 1.0) > KINK_MARGIN,
            np.abs(np.abs(py - gy) - 1.0) > KINK_MARGIN,
        ])
        cases = (
            (lambda c: slpr_loss(c, (gx, gy), cfg), slpr_loss_grad((px, py), (gx, gy), cfg)),
            (lambda c: slpr_loss_ctw(c, (gx, gy), rect, cfg), slpr_loss_ctw_grad((px, py), (gx, gy), rect, cfg)),
        )
        for fn, analytic in cases:
            numeric = np.concatenate(_central_difference(fn, px, py, step))
            error = np.abs(numeric - np.concatenate(analytic))[mask]
            if error.size:
                max_error = max(max_error, float(error.max()))
            checked += int(mask.sum())
            skipped += int((~mask).sum())

    value_checks = _value_checks(cfg)
    passed = max_error <= tolerance and all(value_checks.values())
    logger.info(f"Gradient check: {checked} coordinates, max error {max_error:.3e}, passed={passed}")
    return GradientCheckReport(
        samples=samples,
        checked=checked,
        skipped=skipped,
        max_error=max_error,
        tolerance=tolerance,
        value_checks=value_checks,
        passed=passed,
    )
