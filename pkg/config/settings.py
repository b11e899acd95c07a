"""
Configuration settings for the SLPR toolkit.
"""
from typing import Any, Dict

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from the environment and an optional .env file."""

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # Application Configuration
    app_name: str = "SLPR Toolkit"
    app_host: str = "0.0.0.0"
    app_port: int = 8000
    log_level: str = "INFO"

    # Worker pool (0 = one worker per CPU)
    slpr_threads: int = 0

    # Encoding / restoration
    num_lines: int = 7
    aspect_threshold: float = 0.8
    restore_method: str = "pls"

    # Suppression / evaluation
    nms_threshold: float = 0.3
    eval_iou_threshold: float = 0.5

    # Loss weights
    lambda_r: float = 1.0
    lambda_b: float = 1.0
    lambda_s: float = 1.0
    lambda_hw: float = 4.0

    # Synthetic shapes
    synth_samples: int = 128

    @field_validator("app_port")
    @classmethod
    def validate_app_port(cls, v):
        if not 1 <= v <= 65535:
            raise ValueError("App port must be between 1 and 65535")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        level = v.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown log level: {v}")
        return level

    @field_validator("slpr_threads")
    @classmethod
    def validate_threads(cls, v):
        if v < 0:
            raise ValueError("SLPR_THREADS must be >= 0 (0 = auto)")
        return v

    @field_validator("num_lines")
    @classmethod
    def validate_num_lines(cls, v):
        if v < 1:
            raise ValueError("num_lines must be >= 1")
        return v

    @field_validator("aspect_threshold")
    @classmethod
    def validate_aspect_threshold(cls, v):
        if not 0.0 < v <= 1.0:
            raise ValueError("aspect_threshold must be in (0, 1]")
        return v

    @field_validator("restore_method")
    @classmethod
    def validate_restore_method(cls, v):
        method = v.lower()
        if method not in ("pls", "bhvp"):
            raise ValueError("restore_method must be 'pls' or 'bhvp'")
        return method

    @field_validator("nms_threshold", "eval_iou_threshold")
    @classmethod
    def validate_unit_threshold(cls, v):
        if not 0.0 < v < 1.0:
            raise ValueError("IoU thresholds must be in (0, 1)")
        return v

    @field_validator("lambda_r", "lambda_b", "lambda_s", "lambda_hw")
    @classmethod
    def validate_weight(cls, v):
        if v <= 0:
            raise ValueError("Loss weights must be positive")
        return v

    @field_validator("synth_samples")
    @classmethod
    def validate_synth_samples(cls, v):
        if v < 50:
            raise ValueError("synth_samples must be >= 50")
        return v

    def loss_config_kwargs(self) -> Dict[str, Any]:
        """Keyword arguments for ``slpr.models.config.LossConfig``."""
        return {
            "lambda_r": self.lambda_r,
            "lambda_b": self.lambda_b,
            "lambda_s": self.lambda_s,
            "lambda_hw": self.lambda_hw,
            "k": self.aspect_threshold,
            "n": self.num_lines,
        }

    def restore_config_kwargs(self) -> Dict[str, Any]:
        """Keyword arguments for ``slpr.models.config.RestoreConfig``."""
        return {"method": self.restore_method, "k": self.aspect_threshold}


# Create settings instance
settings = Settings()
