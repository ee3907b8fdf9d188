"""
Engine settings.

Defaults live on the model; a dotenv-format settings file may override them.
The process environment is never read, so identical invocations behave
identically on every machine.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Literal, Optional, Union

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import SystemFileError

logger = logging.getLogger(__name__)

PolicyName = Literal["explosion", "atom"]

# settings-file key -> model field
_KEYS = {
    "PTV_UNIVERSE_CAP": "universe_cap",
    "PTV_FUEL": "fuel",
    "PTV_FINDINGS_CAP": "findings_cap",
    "PTV_MAX_WORLDS": "max_worlds",
    "PTV_POLICY": "policy",
    "PTV_LOG_LEVEL": "log_level",
}


class EngineSettings(BaseModel):
    """Tunable limits shared by the engines and the command line."""

    model_config = ConfigDict(frozen=True)

    universe_cap: int = Field(default=20, ge=1)
    fuel: int = Field(default=10_000, ge=1)
    findings_cap: int = Field(default=100, ge=1)
    max_worlds: int = Field(default=4, ge=1)
    policy: PolicyName = "explosion"
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"


DEFAULT_SETTINGS = EngineSettings()


def load_settings(path: Optional[Union[str, Path]] = None) -> EngineSettings:
    """
    Load settings from a dotenv-format file.

    Args:
        path: Settings file, or None for the defaults

    Returns:
        Validated settings

    Raises:
        SystemFileError: If the file has unknown keys or invalid values
    """
    if path is None:
        return DEFAULT_SETTINGS

    values = dotenv_values(path)
    unknown = sorted(k for k in values if k not in _KEYS)
    if unknown:
        raise SystemFileError(f"unknown settings key(s): {', '.join(unknown)}")

    overrides = {_KEYS[k]: v for k, v in values.items() if v is not None}
    try:
        settings = EngineSettings(**overrides)
    except ValidationError as e:
        raise SystemFileError(f"invalid settings in {path}: {e.errors()[0]['msg']}") from e

    logger.info(f"Loaded settings from {path}: {settings.model_dump()}")
    return settings
