"""`sweep`: evaluate the model along one parameter axis for one or more workloads."""

import argparse
from typing import List

from psram.core.errors import SweepError
from psram.core.logger import get_logger
from psram.models.models import EfficiencyConvention, SweepParameter, SweepResult
from psram.perf import sweep
from psram.workloads import get_factory, known_workloads

from ..context import CommandContext

logger = get_logger(__name__)


def register(
    subparsers: argparse._SubParsersAction, parents: List[argparse.ArgumentParser]
) -> None:
    parser = subparsers.add_parser(
        "sweep",
        parents=parents,
        help="Sweep bandwidth, frequency, conversion, gridpoints, arraybits or bitwidth",
    )
    parser.add_argument(
        "--param",
        required=True,
        help=f"Parameter to vary ({', '.join(p.value for p in SweepParameter)})",
    )
    parser.add_argument(
        "--axis",
        type=float,
        nargs="+",
        required=True,
        help="Strictly increasing axis values in SI units (Hz, bits/s, s, points, bits)",
    )
    parser.add_argument(
        "--workload",
        action="append",
        default=None,
        help=f"Workload ({', '.join(known_workloads())}); repeatable, default sst",
    )
    parser.add_argument(
        "--frequencies",
        type=float,
        nargs="+",
        default=None,
        help="Extra series at these frequencies (Hz), one result per frequency",
    )
    parser.add_argument(
        "--efficiency",
        default=EfficiencyConvention.BIT.value,
        choices=[c.value for c in EfficiencyConvention],
    )


def run(ctx: CommandContext) -> int:
    args = ctx.args
    convention = EfficiencyConvention(args.efficiency)
    names = args.workload or ["sst"]
    factories = {name: get_factory(name) for name in names}

    if args.frequencies and args.param == SweepParameter.FREQUENCY.value:
        raise SweepError("--frequencies cannot be combined with a frequency sweep")
    bases = [("", ctx.config)]
    if args.frequencies:
        bases = [(f"f={f:g}", ctx.config.with_overrides(f_hz=f)) for f in args.frequencies]

    results: List[SweepResult] = []
    for name, factory in factories.items():
        for series, base in bases:
            result = sweep(
                args.param,
                args.axis,
                base,
                factory,
                threads=ctx.threads,
                convention=convention,
                series=series,
            )
            results.append(result)
            logger.info("Sweep finished", workload=name, series=series, points=len(result.axis))

    ctx.store.save_sweeps(results)
    ctx.emit(results)
    return 0
