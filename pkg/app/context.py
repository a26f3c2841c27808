"""Shared state handed to every subcommand."""

import argparse
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List

from psram.models.models import SystemConfig
from psram.models.storage import ReportStore, dumps


@dataclass
class CommandContext:
    """Resolved configuration, defaults and output store for one CLI run."""
    args: argparse.Namespace
    config: SystemConfig
    config_path: Path
    defaults: Dict[str, Any]
    store: ReportStore
    threads: int = 0
    inputs: List[str] = field(default_factory=list)
    resolved: Dict[str, Any] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)

    def tolerance(self, workload: str, quantization: str) -> float:
        return float(self.defaults.get("tolerances", {}).get(quantization, {}).get(workload, 0.0))

    def emit(self, payload: Any) -> None:
        """Print a machine-readable result on stdout."""
        print(dumps(payload), end="")
