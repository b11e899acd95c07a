"""
Target file grammar: one region per line, 4 + 4n space-separated decimals
(rect, x_v, y_h) and an optional trailing score. Lines starting with "#"
are comments.
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

from ..exceptions import InvalidRect, ParseError, SizeMismatch
from ..models.geometry import Point
from ..models.target import SlprTarget

logger = logging.getLogger(__name__)

ScoredTarget = Tuple[SlprTarget, Optional[float]]


def _decimal(value: float) -> str:
    # repr is the shortest string that reads back to the same float
    return repr(float(value))


def format_target_line(t: SlprTarget, score: Optional[float] = None) -> str:
    fields = [_decimal(v) for v in t.to_vector()]
    if score is not None:
        fields.append(_decimal(score))
    return " ".join(fields)


def parse_target_line(line: str) -> ScoredTarget:
    fields = line.split()
    try:
        values = [float(f) for f in fields]
    except ValueError as e:
        raise ParseError(f"target: {e}") from None
    if not all(math.isfinite(v) for v in values):
        raise ParseError(f"target: non-finite value in {line[:80]!r}")
    score = None
    if len(values) % 4 == 1:
        score = values.pop()
    if len(values) < 8 or len(values) % 4:
        raise ParseError(f"target: expected 4 + 4n values (plus optional score), got {len(fields)}")
    try:
        return SlprTarget.from_vector(values), score
    except (SizeMismatch, InvalidRect) as e:
        raise ParseError(f"target: {e}") from e


def parse_target_document(text: str) -> List[ScoredTarget]:
    targets = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            targets.append(parse_target_line(line))
        except ParseError as e:
            raise ParseError(f"line {number}: {e}") from e
    return targets


def format_target_document(targets: Sequence[ScoredTarget]) -> str:
    return "".join(format_target_line(t, score) + "\n" for t, score in targets)


def format_points_line(points: Sequence[Point]) -> str:
    """Decoded points as x1 y1 x2 y2 ... on one line."""
    return " ".join(f"{_decimal(p.x)} {_decimal(p.y)}" for p in points)
