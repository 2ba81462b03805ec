"""Validated runtime settings loaded from TOML with environment overrides."""
from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Dict

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pydantic import BaseModel, Field, ValidationError, field_validator

from app.errors import UsageError

DEFAULT_SETTINGS_PATH = Path("config/settings.toml")

_ENV_OVERRIDES = {
    "AVDC_DATA_ROOT": ("output", "data_root"),
    "AVDC_BRUTE_CAP": ("discrepancy", "brute_cap"),
    "AVDC_DECIMAL_DIGITS": ("discrepancy", "decimal_digits"),
    "AVDC_LOG_LEVEL": ("app", "log_level"),
}


class AppSection(BaseModel):
    name: str = "abstract-vdc"
    log_level: str = Field(default="WARNING", pattern=r"^(DEBUG|INFO|WARNING|ERROR)$")

    @field_validator("log_level", mode="before")
    @classmethod
    def _upper(cls, value: str) -> str:
        return str(value).upper()


class OutputSection(BaseModel):
    data_root: Path = Path("./data")
    checkpoints_dir: str = "checkpoints"
    metrics_dir: str = "metrics"


class AlgebraSection(BaseModel):
    initial_precision_bits: int = Field(default=64, ge=8)
    max_refinements: int = Field(default=4096, gt=0)


class DiscrepancySection(BaseModel):
    brute_cap: int = Field(default=1_000_000, gt=0)
    decimal_digits: int = Field(default=12, ge=1, le=50)
    checkpoint_every: int = Field(default=10_000, gt=0)


class BrsSection(BaseModel):
    slope_threshold: float = Field(default=0.05, gt=0)
    fit_min_n: int = Field(default=1024, ge=2)


class BetaSection(BaseModel):
    remainder_cap: int = Field(default=1_000_000, gt=0)


class Settings(BaseModel):
    """Top-level settings document; every section has usable defaults."""

    app: AppSection = AppSection()
    output: OutputSection = OutputSection()
    algebra: AlgebraSection = AlgebraSection()
    discrepancy: DiscrepancySection = DiscrepancySection()
    brs: BrsSection = BrsSection()
    beta: BetaSection = BetaSection()


def _apply_env(raw: Dict[str, Any]) -> Dict[str, Any]:
    for variable, (section, key) in _ENV_OVERRIDES.items():
        value = os.environ.get(variable)
        if value:
            raw.setdefault(section, {})[key] = value
    return raw


def load_settings(path: Path | None = DEFAULT_SETTINGS_PATH) -> Settings:
    """Read the TOML settings file (optional) and overlay AVDC_* environment variables."""
    raw: Dict[str, Any] = {}
    if path is not None and path.exists():
        with path.open("rb") as handle:
            raw = tomllib.load(handle)
    try:
        return Settings.model_validate(_apply_env(raw))
    except ValidationError as exc:
        raise UsageError(f"invalid settings: {exc}") from exc
