"""Roofline construction and compute/memory bound classification."""

import math
from typing import Callable, Iterable, List, Sequence

import numpy as np

from ..core.errors import ModelError, SweepError
from ..models.models import (
    Bound,
    MachineModel,
    RooflinePoint,
    RooflineReport,
    RoofSegment,
    SweepParameter,
    SystemConfig,
    WorkloadProfile,
)
from .model import peak_performance

BITS_PER_BYTE = 8
BALANCED_TOLERANCE = 1e-9


def machine_model(config: SystemConfig) -> MachineModel:
    """Roofline machine of a system config (bandwidth converted to bytes/s)."""
    return MachineModel(
        peak=peak_performance(config.arch()),
        bandwidth=config.b_bits_per_s / BITS_PER_BYTE,
    )


def arithmetic_intensity(wl: WorkloadProfile) -> float:
    """
    Operations per byte of external traffic.

    Raises:
        ModelError: If the workload moves no data (infinite intensity)
    """
    if wl.s == 0:
        raise ModelError(f"workload {wl.name!r} moves no data; intensity is infinite")
    return wl.n_total / (wl.s / BITS_PER_BYTE)


def ridge_point(m: MachineModel) -> float:
    return m.peak / m.bandwidth


def attainable(m: MachineModel, ai: float) -> float:
    """min(peak, ai x bandwidth)."""
    if ai < 0:
        raise ModelError(f"arithmetic intensity must be >= 0, got {ai}")
    if math.isinf(ai):
        return m.peak
    return min(m.peak, ai * m.bandwidth)


def _bound(ai: float, ridge: float) -> Bound:
    if math.isinf(ai):
        return Bound.COMPUTE_BOUND
    if abs(ai - ridge) / ridge < BALANCED_TOLERANCE:
        return Bound.BALANCED
    return Bound.COMPUTE_BOUND if ai > ridge else Bound.MEMORY_BOUND


def classify(m: MachineModel, wl: WorkloadProfile) -> RooflinePoint:
    """Place a workload on the roofline; S = 0 is reported as ai = inf, ComputeBound."""
    ai = math.inf if wl.s == 0 else arithmetic_intensity(wl)
    return RooflinePoint(
        workload=wl.name,
        ai=ai,
        attainable=attainable(m, ai),
        bound=_bound(ai, ridge_point(m)),
    )


def roofline_report(
    m: MachineModel,
    wls: Iterable[WorkloadProfile],
    ai_min: float = 0.01,
    ai_max: float = 100.0,
    samples: int = 16,
) -> RooflineReport:
    """
    Plot-ready roofline: one point per workload plus the two sampled roofs.

    The memory roof is sampled log-uniformly on [ai_min, ridge] and the
    compute roof on [ridge, ai_max]; the range is widened when the ridge lies
    outside it.
    """
    ridge = ridge_point(m)
    lo = min(ai_min, ridge / 10)
    hi = max(ai_max, ridge * 10)

    mem_ai = np.geomspace(lo, ridge, samples)
    comp_ai = np.geomspace(ridge, hi, samples)

    roofs = [
        RoofSegment(
            name="memory",
            ai=mem_ai.tolist(),
            perf=(mem_ai * m.bandwidth).tolist(),
        ),
        RoofSegment(
            name="compute",
            ai=comp_ai.tolist(),
            perf=[m.peak] * samples,
        ),
    ]
    points = [classify(m, wl) for wl in wls]
    return RooflineReport(machine=m, ridge=ridge, points=points, roofs=roofs)


_SHIFT_FIELDS = {
    SweepParameter.BIT_WIDTH: "w_bits",
    SweepParameter.BANDWIDTH: "b_bits_per_s",
    SweepParameter.FREQUENCY: "f_hz",
}


def roofline_shift(
    base: SystemConfig,
    factory: Callable[[SystemConfig], WorkloadProfile],
    parameter: SweepParameter,
    values: Sequence[float],
) -> List[RooflinePoint]:
    """
    Re-classify one workload as a machine or precision parameter changes.

    The factory is re-invoked per value, so workloads whose traffic depends on
    w see their intensity move along with the machine balance.
    """
    parameter = SweepParameter(parameter)
    if parameter not in _SHIFT_FIELDS:
        raise SweepError(f"roofline shift supports {sorted(p.value for p in _SHIFT_FIELDS)}")

    field = _SHIFT_FIELDS[parameter]
    points = []
    for value in values:
        if field == "w_bits":
            value = int(value)
        config = base.with_overrides(**{field: value})
        points.append(classify(machine_model(config), factory(config)))
    return points
