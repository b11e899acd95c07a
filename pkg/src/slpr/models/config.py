"""
Typed configuration objects for restoration and losses.
"""
from enum import Enum

from pydantic import BaseModel, ConfigDict, field_validator


class RestoreMethod(str, Enum):
    PLS = "pls"
    BHVP = "bhvp"


class RestoreConfig(BaseModel):
    """Restoration method and the aspect threshold k."""

    model_config = ConfigDict(frozen=True)

    method: RestoreMethod = RestoreMethod.PLS
    k: float = 0.8

    @field_validator("method", mode="before")
    @classmethod
    def normalize_method(cls, v):
        return v.lower() if isinstance(v, str) else v

    @field_validator("k")
    @classmethod
    def validate_k(cls, v):
        if not 0.0 < v <= 1.0:
            raise ValueError("k must be in (0, 1]")
        return v


class LossConfig(BaseModel):
    """Loss weights of the multi-task objective plus the CTW balancing terms."""

    model_config = ConfigDict(frozen=True)

    lambda_r: float = 1.0
    lambda_b: float = 1.0
    lambda_s: float = 1.0
    lambda_hw: float = 4.0
    k: float = 0.8
    n: int = 7

    @field_validator("lambda_r", "lambda_b", "lambda_s", "lambda_hw")
    @classmethod
    def validate_weight(cls, v):
        if v <= 0:
            raise ValueError("loss weights must be positive")
        return v

    @field_validator("k")
    @classmethod
    def validate_k(cls, v):
        if not 0.0 < v <= 1.0:
            raise ValueError("k must be in (0, 1]")
        return v

    @field_validator("n")
    @classmethod
    def validate_n(cls, v):
        if v < 1:
            raise ValueError("n must be >= 1")
        return v
