"""Tests for settings, packaged defaults and system config loading."""

import json

import pytest

from psram.config import (
    REFERENCE_CONFIG_PATH,
    get_config,
    get_settings,
    load_defaults,
    load_system_config,
    reset_settings,
)
from psram.core.errors import ConfigError


def test_settings_read_environment(monkeypatch):
    monkeypatch.setenv("PSRAM_PERF_THREADS", "4")
    monkeypatch.setenv("PSRAM_OUTPUT_DIR", "/tmp/psram-runs")
    reset_settings()
    settings = get_settings()
    assert settings.threads == 4
    assert settings.output_dir == "/tmp/psram-runs"
    assert get_settings() is settings


def test_settings_defaults():
    settings = get_settings()
    assert settings.threads == 0


def test_get_config_merges_runtime_and_defaults(monkeypatch):
    monkeypatch.setenv("PSRAM_PERF_THREADS", "2")
    reset_settings()
    config = get_config()
    assert config["runtime"]["threads"] == 2
    assert config["runtime"]["config_path"] == str(REFERENCE_CONFIG_PATH)
    assert config["tolerances"]["real"]["sst"] == pytest.approx(1e-12)
    assert config["workloads"]["mttkrp"]["rank"] == 16


def test_missing_defaults_file(tmp_path):
    assert load_defaults(tmp_path / "absent.yaml") == {}


def test_reference_config_loads():
    config = load_system_config(REFERENCE_CONFIG_PATH)
    assert REFERENCE_CONFIG_PATH.name == "paper-vi-a.json"
    assert REFERENCE_CONFIG_PATH.parent.name == "configs"
    assert config.w_bits == 8
    assert config.arch().c_total == 256


def test_missing_config_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_system_config(tmp_path / "nope.json")


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ not json")
    with pytest.raises(ConfigError, match="invalid JSON"):
        load_system_config(path)


def test_field_level_message(tmp_path):
    raw = json.loads(REFERENCE_CONFIG_PATH.read_text())
    raw["w_bits"] = 0
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(raw))
    with pytest.raises(ConfigError, match="w_bits"):
        load_system_config(path)


def test_missing_field(tmp_path):
    raw = json.loads(REFERENCE_CONFIG_PATH.read_text())
    del raw["f_hz"]
    path = tmp_path / "short.json"
    path.write_text(json.dumps(raw))
    with pytest.raises(ConfigError, match="f_hz"):
        load_system_config(path)


def test_overrides_are_validated(reference_config):
    with pytest.raises(ValueError):
        reference_config.with_overrides(w_bits=512)
