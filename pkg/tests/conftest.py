"""Shared fixtures."""

import sys
from pathlib import Path

import pytest
import structlog

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from psram.config import REFERENCE_CONFIG_PATH, load_system_config, reset_settings
from psram.models.models import SystemConfig


@pytest.fixture
def reference_config() -> SystemConfig:
    """The shipped 256-bit, 8-bit, 32 GHz, HBM3E configuration."""
    return load_system_config(REFERENCE_CONFIG_PATH)


@pytest.fixture
def arch(reference_config):
    return reference_config.arch()


@pytest.fixture
def ideal_config(reference_config) -> SystemConfig:
    """Reference array with no fixed latencies and effectively unlimited bandwidth."""
    return reference_config.with_overrides(
        b_bits_per_s=1e18, t_access_s=0.0, t_eo_s=0.0, t_oe_s=0.0
    )


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    """Each test sees the environment it sets, not a cached Settings."""
    monkeypatch.delenv("PSRAM_PERF_THREADS", raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture(autouse=True)
def _fresh_logging():
    """CLI runs bind logging to the stderr of the test that configured it."""
    yield
    structlog.reset_defaults()
    structlog.contextvars.clear_contextvars()
