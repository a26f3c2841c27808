"""Core utilities shared by every psram module."""

from .logger import bind_run, get_logger, setup_logging
from .errors import (
    PsramError,
    ConfigError,
    ModelError,
    SweepError,
    ProgramError,
    ProtocolError,
    PositivityError,
    TensorParseError,
    DimensionError,
)

__all__ = [
    "get_logger",
    "setup_logging",
    "bind_run",
    "PsramError",
    "ConfigError",
    "ModelError",
    "SweepError",
    "ProgramError",
    "ProtocolError",
    "PositivityError",
    "TensorParseError",
    "DimensionError",
]
