"""
Parameter sweep engine.

Each axis point clones the base configuration, overrides one parameter,
re-derives the workload profile when the parameter changes problem size or
array shape, and evaluates the model. Points are independent; with a
positive thread cap they run concurrently and are reassembled in axis order.
"""

import asyncio
from typing import List, Optional, Protocol, Sequence, Tuple, Union

from pydantic import ValidationError

from ..core.errors import SweepError
from ..core.logger import get_logger
from ..models.models import (
    EfficiencyConvention,
    PerformanceReport,
    SweepParameter,
    SweepResult,
    SystemConfig,
    WorkloadProfile,
)
from .model import evaluate, peak_performance

logger = get_logger(__name__)


class WorkloadFactory(Protocol):
    """Builds a workload profile for a configuration (and optionally a problem size)."""

    def __call__(self, config: SystemConfig, n: Optional[int] = None) -> WorkloadProfile: ...


WorkloadSpec = Union[WorkloadProfile, WorkloadFactory]

_INTEGER_PARAMETERS = {
    SweepParameter.GRID_POINTS,
    SweepParameter.ARRAY_BITS,
    SweepParameter.BIT_WIDTH,
}


def _check_axis(parameter: SweepParameter, axis: Sequence[float]) -> List[float]:
    if len(axis) == 0:
        raise SweepError("sweep axis must not be empty")
    values = [float(v) for v in axis]
    for prev, cur in zip(values, values[1:]):
        if not cur > prev:
            raise SweepError(f"sweep axis must be strictly increasing ({prev} then {cur})")
    if parameter in _INTEGER_PARAMETERS:
        for v in values:
            if not v.is_integer() or v < 1:
                raise SweepError(
                    f"{parameter.value} axis values must be positive integers, got {v}"
                )
    elif values[0] < 0 or (parameter is not SweepParameter.CONVERSION and values[0] == 0):
        raise SweepError(f"{parameter.value} axis values out of range, got {values[0]}")
    return values


def _point_config(base: SystemConfig, parameter: SweepParameter, value: float) -> SystemConfig:
    try:
        if parameter is SweepParameter.BANDWIDTH:
            return base.with_overrides(b_bits_per_s=value)
        if parameter is SweepParameter.FREQUENCY:
            return base.with_overrides(f_hz=value)
        if parameter is SweepParameter.CONVERSION:
            return base.with_overrides(t_eo_s=value / 2, t_oe_s=value / 2)
        if parameter is SweepParameter.ARRAY_BITS:
            return base.with_overrides(c_total_bits=int(value))
        if parameter is SweepParameter.BIT_WIDTH:
            return base.with_overrides(w_bits=int(value))
    except ValidationError as e:
        raise SweepError(f"{parameter.value}={value} gives an invalid configuration: {e}") from e
    return base


def _point_workload(
    workload: WorkloadSpec,
    parameter: SweepParameter,
    config: SystemConfig,
    value: float,
) -> WorkloadProfile:
    if isinstance(workload, WorkloadProfile):
        return workload
    if parameter is SweepParameter.GRID_POINTS:
        return workload(config, n=int(value))
    return workload(config)


def _evaluate_point(
    base: SystemConfig,
    parameter: SweepParameter,
    value: float,
    workload: WorkloadSpec,
    convention: EfficiencyConvention,
) -> Tuple[PerformanceReport, float]:
    config = _point_config(base, parameter, value)
    wl = _point_workload(workload, parameter, config, value)
    report = evaluate(config.arch(), config.memory(), config.conversion(), wl, convention)
    logger.debug(
        "Sweep point evaluated",
        parameter=parameter.value,
        value=value,
        sustained=report.sustained,
    )
    return report, peak_performance(config.arch())


def _prepare(
    parameter: Union[SweepParameter, str],
    axis: Sequence[float],
    workload: WorkloadSpec,
) -> Tuple[SweepParameter, List[float]]:
    try:
        parameter = SweepParameter(parameter)
    except ValueError as e:
        known = ", ".join(p.value for p in SweepParameter)
        raise SweepError(f"unknown sweep parameter {parameter!r} (known: {known})") from e
    values = _check_axis(parameter, axis)
    if parameter is SweepParameter.GRID_POINTS and isinstance(workload, WorkloadProfile):
        raise SweepError("a gridpoints sweep needs a workload factory, not a fixed profile")
    return parameter, values


def _assemble(
    parameter: SweepParameter,
    values: List[float],
    points: List[Tuple[PerformanceReport, float]],
    series: str,
) -> SweepResult:
    reports = [report for report, _ in points]
    return SweepResult(
        parameter=parameter,
        workload=reports[0].workload,
        series=series,
        axis=values,
        reports=reports,
        peaks=[peak for _, peak in points],
    )


async def sweep_async(
    parameter: Union[SweepParameter, str],
    axis: Sequence[float],
    base: SystemConfig,
    workload: WorkloadSpec,
    threads: int = 4,
    convention: EfficiencyConvention = EfficiencyConvention.BIT,
    series: str = "",
) -> SweepResult:
    """
    Evaluate sweep points concurrently, at most `threads` at a time.

    Args:
        parameter: Parameter to vary
        axis: Strictly increasing axis values
        base: Configuration every point starts from
        workload: Fixed profile or factory re-invoked per point
        threads: Concurrency cap (values < 1 are treated as 1)
        convention: Efficiency convention for the reports
        series: Optional label for multi-series sweeps

    Returns:
        SweepResult in axis order
    """
    parameter, values = _prepare(parameter, axis, workload)
    semaphore = asyncio.Semaphore(max(1, threads))

    async def run_point(value: float) -> Tuple[PerformanceReport, float]:
        async with semaphore:
            return await asyncio.to_thread(
                _evaluate_point, base, parameter, value, workload, convention
            )

    logger.info(
        "Starting concurrent sweep",
        parameter=parameter.value,
        points=len(values),
        threads=threads,
    )
    points = await asyncio.gather(*(run_point(v) for v in values))
    return _assemble(parameter, values, list(points), series)


def sweep(
    parameter: Union[SweepParameter, str],
    axis: Sequence[float],
    base: SystemConfig,
    workload: WorkloadSpec,
    threads: int = 0,
    convention: EfficiencyConvention = EfficiencyConvention.BIT,
    series: str = "",
) -> SweepResult:
    """
    Evaluate the model along one parameter axis.

    Raises:
        SweepError: On an invalid parameter/axis/workload combination
    """
    if threads > 0:
        return asyncio.run(
            sweep_async(parameter, axis, base, workload, threads, convention, series)
        )

    parameter, values = _prepare(parameter, axis, workload)
    logger.info("Starting sweep", parameter=parameter.value, points=len(values))
    points = [_evaluate_point(base, parameter, v, workload, convention) for v in values]
    return _assemble(parameter, values, points, series)
