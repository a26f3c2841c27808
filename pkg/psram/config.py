"""Configuration management for the psram toolkit."""

import json
import os
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar, Union

import yaml
from pydantic import BaseModel, Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from .core.errors import ConfigError
from .core.logger import get_logger
from .models.models import SystemConfig

logger = get_logger(__name__)

REPO_ROOT = Path(__file__).resolve().parent.parent
REFERENCE_CONFIG_PATH = REPO_ROOT / "configs" / "paper-vi-a.json"

M = TypeVar("M", bound=BaseModel)


class Settings(BaseSettings):
    """Process-level settings read from the environment / .env file."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
        populate_by_name=True,
    )

    # Sweep parallelism cap (0 = sequential)
    threads: int = Field(0, ge=0, alias="PSRAM_PERF_THREADS")

    log_level: str = Field("WARNING", alias="LOG_LEVEL")
    output_dir: str = Field("./data/runs", alias="PSRAM_OUTPUT_DIR")
    config_path: Optional[str] = Field(None, alias="PSRAM_CONFIG")


_settings: Optional[Settings] = None


def load_defaults(config_path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """
    Load package defaults from YAML.

    Args:
        config_path: Path to defaults YAML file

    Returns:
        Defaults dictionary
    """
    if config_path is None:
        config_path = Path(__file__).parent / "config.yaml"

    config: Dict[str, Any] = {}

    if os.path.exists(config_path):
        with open(config_path, "r") as f:
            config = yaml.safe_load(f) or {}
        logger.debug("Defaults loaded", config_path=str(config_path))
    else:
        logger.warning("Defaults file not found, using built-ins", config_path=str(config_path))

    return config


def get_settings() -> Settings:
    """
    Get process settings.

    Returns:
        Settings instance
    """
    global _settings

    if _settings is None:
        _settings = Settings()

    return _settings


def reset_settings() -> None:
    """Drop the cached Settings so the environment is re-read."""
    global _settings
    _settings = None


def get_config() -> Dict[str, Any]:
    """
    Get merged configuration (YAML defaults + environment settings).

    Returns:
        Configuration dictionary
    """
    defaults = load_defaults()
    settings = get_settings()

    config: Dict[str, Any] = {
        "runtime": {
            "threads": settings.threads,
            "log_level": settings.log_level,
            "output_dir": settings.output_dir,
            "config_path": settings.config_path or str(REFERENCE_CONFIG_PATH),
        },
    }

    for key, value in defaults.items():
        if key in config and isinstance(value, dict):
            config[key] = {**value, **config[key]}
        else:
            config[key] = value

    return config


def load_json_model(path: Union[str, Path], model: Type[M]) -> M:
    """
    Load a JSON file and validate it into a pydantic record.

    Args:
        path: Path to the JSON file
        model: Record class to validate against

    Returns:
        Validated record

    Raises:
        FileNotFoundError: If the file does not exist
        ConfigError: If the file is not valid JSON or fails validation
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"{model.__name__} file not found: {path}")

    try:
        with open(path, "r") as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e

    try:
        record = model.model_validate(raw)
    except ValidationError as e:
        fields = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}"
            for err in e.errors()
        )
        raise ConfigError(f"{path}: {fields}") from e

    logger.info("Record loaded", record=model.__name__, path=str(path))
    return record


def load_system_config(path: Union[str, Path]) -> SystemConfig:
    """Load and validate a flat system configuration JSON record."""
    return load_json_model(path, SystemConfig)
