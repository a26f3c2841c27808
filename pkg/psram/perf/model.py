"""
Analytical system-level latency, throughput, energy and area model.

All functions are pure over immutable configuration records. One MAC counts
as two operations; N_total is in scalar operations and S in bits.
"""

from typing import Union

from ..core.errors import ModelError
from ..core.logger import get_logger
from ..models.models import (
    ArchConfig,
    ConversionConfig,
    EfficiencyConvention,
    LatencyBreakdown,
    MemoryConfig,
    PerformanceReport,
    WorkloadProfile,
)

logger = get_logger(__name__)

OPS_PER_MAC = 2


def compute_cells(arch: ArchConfig) -> int:
    """Number of whole w-bit compute cells; leftover bits are unused."""
    return arch.c_total // arch.w


def peak_performance(arch: ArchConfig) -> float:
    """P x F x Ops, in ops/s."""
    return compute_cells(arch) * arch.f * arch.ops


def t_mem(mem: MemoryConfig, wl: WorkloadProfile) -> float:
    return mem.t_access + wl.s / mem.b


def t_conv(conv: ConversionConfig) -> float:
    return conv.t_eo + conv.t_oe


def t_comp(arch: ArchConfig, wl: WorkloadProfile) -> float:
    """
    Compute time N_total / (P x Ops x F).

    Raises:
        ModelError: If the array holds no whole compute cell
    """
    p = compute_cells(arch)
    if p == 0:
        raise ModelError(f"no compute cells: c_total={arch.c_total}, w={arch.w}")
    return wl.n_total / (p * arch.ops * arch.f)


def t_total(
    arch: ArchConfig,
    mem: MemoryConfig,
    conv: ConversionConfig,
    wl: WorkloadProfile,
) -> LatencyBreakdown:
    """Latency breakdown; the total is the plain sum of the three components."""
    mem_s = t_mem(mem, wl)
    conv_s = t_conv(conv)
    comp_s = t_comp(arch, wl)
    return LatencyBreakdown(
        t_mem=mem_s,
        t_conv=conv_s,
        t_comp=comp_s,
        t_total=mem_s + conv_s + comp_s,
    )


def _sustained(wl: WorkloadProfile, breakdown: LatencyBreakdown) -> float:
    if breakdown.t_total == 0:
        if wl.n_total == 0:
            raise ModelError("sustained performance undefined: N_total = 0 and T_total = 0")
        raise ModelError("T_total = 0 with N_total > 0")
    return wl.n_total / breakdown.t_total


def sustained_performance(
    arch: ArchConfig,
    mem: MemoryConfig,
    conv: ConversionConfig,
    wl: WorkloadProfile,
) -> float:
    """N_total / T_total, in ops/s."""
    return _sustained(wl, t_total(arch, mem, conv, wl))


def energy_per_bit(arch: ArchConfig) -> float:
    """Per-bit switching energy, scaled linearly with frequency from the reference point."""
    return arch.e_bit_ref * (arch.f / arch.f_ref)


def energy_efficiency(
    arch: ArchConfig,
    convention: Union[EfficiencyConvention, str] = EfficiencyConvention.BIT,
) -> float:
    """
    Energy efficiency in ops/J (multiply by 1e-12 for TOPS/W).

    The bit-level convention counts two operations per bitcell switching
    event; the word-level one charges a w-bit MAC (two operations) with
    w switching events. They differ by a factor of w.
    """
    convention = EfficiencyConvention(convention)
    e_bit = energy_per_bit(arch)
    if convention is EfficiencyConvention.WORD:
        return OPS_PER_MAC / (arch.w * e_bit)
    return OPS_PER_MAC / e_bit


def workload_energy(arch: ArchConfig, switching_events: float) -> float:
    """Energy in joules of a measured (or estimated) number of switching events."""
    if switching_events < 0:
        raise ModelError(f"switching_events must be >= 0, got {switching_events}")
    return switching_events * energy_per_bit(arch)


def switching_events_for(arch: ArchConfig, wl: WorkloadProfile) -> float:
    """One event per engaged bitcell per MAC: (N_total / 2) x w."""
    return wl.n_total / OPS_PER_MAC * arch.w


def array_area(arch: ArchConfig) -> float:
    """Array area in mm^2."""
    return arch.c_total * arch.a_bitcell


def evaluate(
    arch: ArchConfig,
    mem: MemoryConfig,
    conv: ConversionConfig,
    wl: WorkloadProfile,
    convention: Union[EfficiencyConvention, str] = EfficiencyConvention.BIT,
) -> PerformanceReport:
    """
    Evaluate the full model for one workload.

    Args:
        arch: Array parameters
        mem: External memory parameters
        conv: Conversion latencies
        wl: Workload profile
        convention: Efficiency convention reported in `efficiency`

    Returns:
        PerformanceReport whose fields equal the single-purpose operations

    Raises:
        ModelError: If sustained performance is undefined
    """
    convention = EfficiencyConvention(convention)
    breakdown = t_total(arch, mem, conv, wl)
    sustained = _sustained(wl, breakdown)
    events = switching_events_for(arch, wl)

    report = PerformanceReport(
        workload=wl.name,
        breakdown=breakdown,
        sustained=sustained,
        peak=peak_performance(arch),
        p=compute_cells(arch),
        energy_per_bit=energy_per_bit(arch),
        efficiency=energy_efficiency(arch, convention),
        efficiency_word=energy_efficiency(arch, EfficiencyConvention.WORD),
        efficiency_convention=convention,
        switching_events=events,
        psram_energy=workload_energy(arch, events),
        area=array_area(arch),
    )

    logger.debug(
        "Model evaluated",
        workload=wl.name,
        t_total=breakdown.t_total,
        sustained=sustained,
        peak=report.peak,
    )
    return report
