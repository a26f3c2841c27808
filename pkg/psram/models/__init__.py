"""Data models for the psram toolkit."""

from .models import (
    ArchConfig,
    MemoryConfig,
    ConversionConfig,
    WorkloadProfile,
    SystemConfig,
    LatencyBreakdown,
    EfficiencyConvention,
    PerformanceReport,
    Bound,
    MachineModel,
    RooflinePoint,
    RoofSegment,
    RooflineReport,
    SweepParameter,
    SweepResult,
    RunManifest,
)

__all__ = [
    "ArchConfig",
    "MemoryConfig",
    "ConversionConfig",
    "WorkloadProfile",
    "SystemConfig",
    "LatencyBreakdown",
    "EfficiencyConvention",
    "PerformanceReport",
    "Bound",
    "MachineModel",
    "RooflinePoint",
    "RoofSegment",
    "RooflineReport",
    "SweepParameter",
    "SweepResult",
    "RunManifest",
]
