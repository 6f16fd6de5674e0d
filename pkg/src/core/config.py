"""Runtime settings loaded from the environment and an optional .env file."""

import logging
import os
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

logger = logging.getLogger(__name__)

ENV_PREFIX = "WORDCERT_"


class Settings(BaseModel):
    """Tolerances, search defaults and size guards."""

    imag_tol_scale: float = Field(1e-8, gt=0)
    psd_tol_scale: float = Field(1e-8, gt=0)
    spectrum_tol: float = Field(1e-8, gt=0)
    sym_tol: float = Field(1e-12, gt=0)
    default_dims: List[int] = Field(default_factory=lambda: [2, 3])
    default_trials: int = Field(10000, ge=1)
    default_seed: int = 0
    hom_vertex_guard: int = Field(12, ge=1)
    rigidity_guard: int = Field(14, ge=1)
    transfer_guard: int = Field(14, ge=1)
    workers: int = Field(1, ge=1)
    db_path: str = "data/certificates.db"
    log_level: str = "INFO"

    @field_validator("default_dims", mode="before")
    @classmethod
    def split_dims(cls, value):
        if isinstance(value, str):
            return [int(part) for part in value.split(",") if part.strip()]
        return value

    @field_validator("default_dims")
    @classmethod
    def check_dims(cls, value: List[int]) -> List[int]:
        if not value or any(not 1 <= d <= 16 for d in value):
            raise ValueError(f"dims must be non-empty and within 1..16: {value}")
        return value

    @field_validator("log_level")
    @classmethod
    def check_level(cls, value: str) -> str:
        level = value.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"Unknown log level: {value}")
        return level


def load_settings(env_file: Optional[str] = None) -> Settings:
    """Build Settings from WORDCERT_* environment variables."""
    load_dotenv(env_file)
    overrides = {}
    for name in Settings.model_fields:
        raw = os.getenv(ENV_PREFIX + name.upper())
        if raw is not None:
            overrides[name] = raw
    if overrides:
        logger.debug(f"Settings overrides from environment: {sorted(overrides)}")
    return Settings(**overrides)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Process-wide settings, loaded on first use."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def imag_tolerance(norm: float, settings: Optional[Settings] = None) -> float:
    settings = settings or get_settings()
    return settings.imag_tol_scale * (1.0 + norm)


def psd_tolerance(norm: float, settings: Optional[Settings] = None) -> float:
    settings = settings or get_settings()
    return settings.psd_tol_scale * (1.0 + norm)
