"""Analytical performance model, roofline and sweep engine."""

from .model import (
    compute_cells,
    peak_performance,
    t_mem,
    t_conv,
    t_comp,
    t_total,
    sustained_performance,
    energy_per_bit,
    energy_efficiency,
    workload_energy,
    array_area,
    evaluate,
)
from .roofline import (
    machine_model,
    arithmetic_intensity,
    ridge_point,
    attainable,
    classify,
    roofline_report,
    roofline_shift,
)
from .sweep import sweep, sweep_async

__all__ = [
    "compute_cells",
    "peak_performance",
    "t_mem",
    "t_conv",
    "t_comp",
    "t_total",
    "sustained_performance",
    "energy_per_bit",
    "energy_efficiency",
    "workload_energy",
    "array_area",
    "evaluate",
    "machine_model",
    "arithmetic_intensity",
    "ridge_point",
    "attainable",
    "classify",
    "roofline_report",
    "roofline_shift",
    "sweep",
    "sweep_async",
]
