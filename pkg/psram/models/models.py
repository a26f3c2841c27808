"""Pydantic models for configuration records and evaluated reports."""

from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class ArchConfig(_Frozen):
    """pSRAM array parameters."""
    c_total: int = Field(..., gt=0, description="Array capacity in bits")
    w: int = Field(..., gt=0, description="Operand bit width")
    f: float = Field(..., gt=0, description="Operating frequency (Hz)")
    ops: float = Field(..., gt=0, description="Operations per cycle per compute cell")
    e_bit_ref: float = Field(
        ..., gt=0, description="Energy per bit per switching event at f_ref (J)"
    )
    f_ref: float = Field(..., gt=0, description="Reference frequency for e_bit_ref (Hz)")
    a_bitcell: float = Field(..., gt=0, description="Area per bitcell (mm^2)")

    @model_validator(mode="after")
    def _width_fits(self) -> "ArchConfig":
        if self.w > self.c_total:
            raise ValueError(f"w={self.w} exceeds c_total={self.c_total}")
        return self


class MemoryConfig(_Frozen):
    """External memory parameters."""
    b: float = Field(..., gt=0, description="Peak external bandwidth (bits/s)")
    t_access: float = Field(0.0, ge=0, description="Fixed access latency (s)")


class ConversionConfig(_Frozen):
    """Opto-electronic conversion latencies."""
    t_eo: float = Field(0.0, ge=0, description="Electrical-to-optical latency (s)")
    t_oe: float = Field(0.0, ge=0, description="Optical-to-electrical latency (s)")


class WorkloadProfile(_Frozen):
    """Operation count and external data volume of a workload."""
    name: str = Field("custom", description="Workload identifier")
    n_total: float = Field(..., ge=0, description="Total scalar operations")
    s: float = Field(..., ge=0, description="External memory traffic (bits)")


class SystemConfig(_Frozen):
    """Flat JSON configuration record; keys are the on-disk field names."""
    c_total_bits: int = Field(..., gt=0)
    w_bits: int = Field(..., gt=0)
    f_hz: float = Field(..., gt=0)
    ops_per_cycle: float = Field(..., gt=0)
    e_bit_ref_j: float = Field(..., gt=0)
    f_ref_hz: float = Field(..., gt=0)
    a_bitcell_mm2: float = Field(..., gt=0)
    b_bits_per_s: float = Field(..., gt=0)
    t_access_s: float = Field(..., ge=0)
    t_eo_s: float = Field(..., ge=0)
    t_oe_s: float = Field(..., ge=0)

    @model_validator(mode="after")
    def _width_fits(self) -> "SystemConfig":
        if self.w_bits > self.c_total_bits:
            raise ValueError(f"w_bits={self.w_bits} exceeds c_total_bits={self.c_total_bits}")
        return self

    def arch(self) -> ArchConfig:
        return ArchConfig(
            c_total=self.c_total_bits,
            w=self.w_bits,
            f=self.f_hz,
            ops=self.ops_per_cycle,
            e_bit_ref=self.e_bit_ref_j,
            f_ref=self.f_ref_hz,
            a_bitcell=self.a_bitcell_mm2,
        )

    def memory(self) -> MemoryConfig:
        return MemoryConfig(b=self.b_bits_per_s, t_access=self.t_access_s)

    def conversion(self) -> ConversionConfig:
        return ConversionConfig(t_eo=self.t_eo_s, t_oe=self.t_oe_s)

    def with_overrides(self, **fields: Any) -> "SystemConfig":
        """Return a validated copy with the given on-disk fields replaced."""
        return SystemConfig.model_validate({**self.model_dump(), **fields})


class LatencyBreakdown(_Frozen):
    """Per-component latencies (s)."""
    t_mem: float = Field(..., ge=0)
    t_conv: float = Field(..., ge=0)
    t_comp: float = Field(..., ge=0)
    t_total: float = Field(..., ge=0)


class EfficiencyConvention(str, Enum):
    """Operation-counting convention for energy efficiency."""
    BIT = "bit"
    WORD = "word"


class PerformanceReport(_Frozen):
    """Evaluated performance, energy and area for one workload."""
    workload: str
    breakdown: LatencyBreakdown
    sustained: float = Field(..., ge=0, description="ops/s")
    peak: float = Field(..., gt=0, description="ops/s")
    p: int = Field(..., ge=0, description="Compute cells")
    energy_per_bit: float = Field(..., gt=0, description="J")
    efficiency: float = Field(..., gt=0, description="ops/J under the selected convention")
    efficiency_word: float = Field(..., gt=0, description="ops/J, word-level convention")
    efficiency_convention: EfficiencyConvention = EfficiencyConvention.BIT
    switching_events: float = Field(..., ge=0)
    psram_energy: float = Field(..., ge=0, description="J")
    area: float = Field(..., gt=0, description="mm^2")

    @property
    def efficiency_tops_per_w(self) -> float:
        return self.efficiency * 1e-12


class Bound(str, Enum):
    """Roofline bound class."""
    COMPUTE_BOUND = "ComputeBound"
    MEMORY_BOUND = "MemoryBound"
    BALANCED = "Balanced"


class MachineModel(_Frozen):
    """Roofline machine: compute roof and bandwidth roof."""
    peak: float = Field(..., gt=0, description="ops/s")
    bandwidth: float = Field(..., gt=0, description="bytes/s")


class RooflinePoint(_Frozen):
    """One workload placed on the roofline."""
    workload: str
    ai: float = Field(..., ge=0, description="ops/byte (inf when S = 0)")
    attainable: float = Field(..., ge=0, description="ops/s")
    bound: Bound


class RoofSegment(_Frozen):
    """A sampled roof line for plotting."""
    name: str
    ai: List[float]
    perf: List[float]


class RooflineReport(_Frozen):
    """Plot-ready roofline data."""
    machine: MachineModel
    ridge: float
    points: List[RooflinePoint]
    roofs: List[RoofSegment]


class SweepParameter(str, Enum):
    """Parameters a sweep can vary."""
    BANDWIDTH = "bandwidth"
    FREQUENCY = "frequency"
    CONVERSION = "conversion"
    GRID_POINTS = "gridpoints"
    ARRAY_BITS = "arraybits"
    BIT_WIDTH = "bitwidth"


class SweepResult(_Frozen):
    """Evaluated reports along one sweep axis."""
    parameter: SweepParameter
    workload: str
    series: str = ""
    axis: List[float]
    reports: List[PerformanceReport]
    peaks: List[float]

    @model_validator(mode="after")
    def _lengths_agree(self) -> "SweepResult":
        if not (len(self.axis) == len(self.reports) == len(self.peaks)):
            raise ValueError("axis, reports and peaks must have equal length")
        return self


class RunManifest(BaseModel):
    """Everything needed to re-run a CLI command."""
    command: str
    argv: List[str] = Field(default_factory=list)
    config: Dict[str, Any] = Field(default_factory=dict)
    options: Dict[str, Any] = Field(default_factory=dict)
    defaults: Dict[str, Any] = Field(
        default_factory=dict, description="Package defaults merged with settings"
    )
    resolved: Dict[str, Any] = Field(
        default_factory=dict, description="Workload parameters the command actually used"
    )
    inputs: List[str] = Field(default_factory=list)
    seed: Optional[int] = None
    outputs: List[str] = Field(default_factory=list)
    version: str
    created_at: str = Field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(),
        description="Excluded from determinism checks",
    )
