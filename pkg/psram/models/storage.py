"""File storage for reports, sweeps, roofline data, simulation stats and run manifests."""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel

from ..core.logger import get_logger
from .models import (
    PerformanceReport,
    RooflineReport,
    RunManifest,
    SweepParameter,
    SweepResult,
    WorkloadProfile,
)

logger = get_logger(__name__)

CSV_FLOAT_FORMAT = "%.9g"
FORMATS = ("json", "csv", "both")


def _jsonable(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return _jsonable(value.model_dump())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (np.floating, np.integer)):
        return _jsonable(value.item())
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float) and not np.isfinite(value):
        return str(value)
    return value


def dumps(payload: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"


def report_row(
    report: PerformanceReport, profile: Optional[WorkloadProfile] = None
) -> Dict[str, Any]:
    row: Dict[str, Any] = {"workload": report.workload}
    if profile is not None:
        row.update(n_total=profile.n_total, s_bits=profile.s)
    row.update(
        p=report.p,
        peak=report.peak,
        sustained=report.sustained,
        t_mem=report.breakdown.t_mem,
        t_conv=report.breakdown.t_conv,
        t_comp=report.breakdown.t_comp,
        t_total=report.breakdown.t_total,
        energy_per_bit=report.energy_per_bit,
        efficiency=report.efficiency,
        efficiency_word=report.efficiency_word,
        switching_events=report.switching_events,
        psram_energy=report.psram_energy,
        area=report.area,
    )
    return row


def sweep_frame(results: Iterable[SweepResult]) -> pd.DataFrame:
    """
    Long-format table of one or more sweeps.

    Columns start with value, t_mem, t_conv, t_comp, t_total, sustained, peak;
    the sweep labels, p and area follow. Frequency sweeps append the energy
    columns (pJ/bit and TOPS/W in both counting conventions) after those.
    """
    rows: List[Dict[str, Any]] = []
    energy = False
    for result in results:
        energy = energy or result.parameter is SweepParameter.FREQUENCY
        for value, report, peak in zip(result.axis, result.reports, result.peaks):
            row = {
                "value": value,
                "t_mem": report.breakdown.t_mem,
                "t_conv": report.breakdown.t_conv,
                "t_comp": report.breakdown.t_comp,
                "t_total": report.breakdown.t_total,
                "sustained": report.sustained,
                "peak": peak,
                "parameter": result.parameter.value,
                "workload": result.workload,
                "series": result.series,
                "p": report.p,
                "area": report.area,
            }
            if result.parameter is SweepParameter.FREQUENCY:
                row.update(
                    energy_per_bit_pj=report.energy_per_bit * 1e12,
                    efficiency_tops_per_w=report.efficiency * 1e-12,
                    efficiency_word_tops_per_w=report.efficiency_word * 1e-12,
                )
            rows.append(row)
    frame = pd.DataFrame(rows)
    logger.debug("Sweep table built", rows=len(rows), energy_columns=energy)
    return frame


def roofline_frames(report: RooflineReport) -> Dict[str, pd.DataFrame]:
    points = pd.DataFrame(
        [
            {
                "workload": p.workload,
                "ai": p.ai,
                "attainable": p.attainable,
                "bound": p.bound.value,
                "ridge": report.ridge,
            }
            for p in report.points
        ],
        columns=["workload", "ai", "attainable", "bound", "ridge"],
    )
    roofs = pd.DataFrame(
        [
            {"roof": roof.name, "ai": ai, "perf": perf}
            for roof in report.roofs
            for ai, perf in zip(roof.ai, roof.perf)
        ],
        columns=["roof", "ai", "perf"],
    )
    return {"points": points, "roofs": roofs}


class ReportStore:
    """Writes command outputs into one directory and remembers what it wrote."""

    def __init__(self, out_dir: Path, fmt: str = "both", float_format: str = CSV_FLOAT_FORMAT):
        """
        Initialize storage.

        Args:
            out_dir: Output directory (created if missing)
            fmt: One of json, csv, both
            float_format: printf-style CSV number format
        """
        if fmt not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}, got {fmt!r}")
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.fmt = fmt
        self.float_format = float_format
        self.written: List[str] = []

    @property
    def wants_json(self) -> bool:
        return self.fmt in ("json", "both")

    @property
    def wants_csv(self) -> bool:
        return self.fmt in ("csv", "both")

    def write_json(self, name: str, payload: Any) -> Path:
        path = self.out_dir / name
        path.write_text(dumps(payload))
        self.written.append(path.name)
        logger.debug("JSON written", path=str(path))
        return path

    def write_csv(self, name: str, frame: pd.DataFrame) -> Path:
        path = self.out_dir / name
        frame.to_csv(path, index=False, float_format=self.float_format, lineterminator="\n")
        self.written.append(path.name)
        logger.debug("CSV written", path=str(path), rows=len(frame))
        return path

    def save_reports(
        self,
        reports: List[PerformanceReport],
        profiles: Optional[List[WorkloadProfile]] = None,
        stem: str = "report",
    ) -> None:
        profiles = profiles or [None] * len(reports)
        if self.wants_json:
            self.write_json(
                f"{stem}.json",
                [
                    {"report": r, "profile": p} if p is not None else {"report": r}
                    for r, p in zip(reports, profiles)
                ],
            )
        if self.wants_csv:
            self.write_csv(
                f"{stem}.csv", pd.DataFrame([report_row(r, p) for r, p in zip(reports, profiles)])
            )

    def save_sweeps(self, results: List[SweepResult], stem: str = "sweep") -> None:
        if self.wants_json:
            self.write_json(f"{stem}.json", results)
        if self.wants_csv:
            self.write_csv(f"{stem}.csv", sweep_frame(results))

    def save_roofline(self, report: RooflineReport, stem: str = "roofline") -> None:
        if self.wants_json:
            self.write_json(f"{stem}.json", report)
        if self.wants_csv:
            for part, frame in roofline_frames(report).items():
                self.write_csv(f"{stem}_{part}.csv", frame)

    def save_simulation(self, payload: Dict[str, Any], outputs: Dict[str, np.ndarray]) -> None:
        """Stats and oracle comparison as JSON; output arrays as JSON and/or CSV columns."""
        self.write_json("stats.json", payload)
        if self.wants_json:
            self.write_json("outputs.json", outputs)
        if self.wants_csv:
            columns = {k: np.asarray(v).reshape(-1) for k, v in outputs.items()}
            self.write_csv("outputs.csv", pd.DataFrame(columns))

    def save_manifest(self, manifest: RunManifest) -> Path:
        """Manifest is always JSON and lists every file written before it."""
        manifest = manifest.model_copy(update={"outputs": sorted(self.written)})
        return self.write_json("manifest.json", manifest)
