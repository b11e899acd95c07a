"""
Synthetic shape specification, serialisable as a single key=value line.
"""
import math
from enum import Enum
from typing import Dict

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..exceptions import InvalidSpec

PARAM_NAMES = {
    "rect": ("x_min", "y_min", "x_max", "y_max"),
    "rotated_quad": ("cx", "cy", "width", "height", "angle", "jitter"),
    "sine_band": ("x0", "y0", "length", "height", "amplitude", "period", "samples"),
}


class ShapeKind(str, Enum):
    RECT = "rect"
    ROTATED_QUAD = "rotated_quad"
    SINE_BAND = "sine_band"


class ShapeSpec(BaseModel):
    """
    Kind, 64-bit seed and kind-specific parameters.

    Parameters left out are drawn from the seeded generator, so the spec
    alone determines the shape.
    """

    model_config = ConfigDict(frozen=True)

    kind: ShapeKind
    seed: int = 0
    params: Dict[str, float] = Field(default_factory=dict)

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v):
        if not 0 <= v < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        return v

    @field_validator("params")
    @classmethod
    def validate_params(cls, v, info):
        kind = info.data.get("kind")
        allowed = PARAM_NAMES.get(kind.value if isinstance(kind, ShapeKind) else str(kind), ())
        for name, value in v.items():
            if name not in allowed:
                raise ValueError(f"unknown parameter {name!r} for kind {kind}")
            if not math.isfinite(value):
                raise ValueError(f"parameter {name!r} is not finite")
        return v

    def with_seed(self, seed: int) -> "ShapeSpec":
        return ShapeSpec(kind=self.kind, seed=seed, params=dict(self.params))

    def to_record(self) -> str:
        fields = [f"kind={self.kind.value}", f"seed={self.seed}"]
        fields += [f"{name}={self.params[name]!r}" for name in PARAM_NAMES[self.kind.value] if name in self.params]
        return " ".join(fields)

    @classmethod
    def from_record(cls, line: str) -> "ShapeSpec":
        """Parse ``kind=sine_band seed=3 amplitude=2.5 ...``."""
        values: Dict[str, str] = {}
        for token in line.split():
            if "=" not in token:
                raise InvalidSpec(f"Expected key=value, got {token!r}")
            key, _, value = token.partition("=")
            values[key.strip()] = value.strip()
        if "kind" not in values:
            raise InvalidSpec(f"Missing kind in spec record {line!r}")
        kind = values.pop("kind")
        try:
            seed = int(values.pop("seed", "0"))
            params = {key: float(value) for key, value in values.items()}
            return cls(kind=kind, seed=seed, params=params)
        except (ValueError, ValidationError) as e:
            raise InvalidSpec(f"Invalid spec record {line!r}: {e}") from e
