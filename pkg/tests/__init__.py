"""Tests for psram-perf."""
