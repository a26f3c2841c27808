"""`model`: evaluate the analytical model for one configuration."""

import argparse
from typing import List

from psram.core.logger import get_logger
from psram.models.models import EfficiencyConvention, WorkloadProfile
from psram.perf import evaluate
from psram.workloads import get_factory, known_workloads

from ..context import CommandContext

logger = get_logger(__name__)


def register(
    subparsers: argparse._SubParsersAction, parents: List[argparse.ArgumentParser]
) -> None:
    parser = subparsers.add_parser(
        "model",
        parents=parents,
        help="Evaluate latency, sustained/peak performance, energy and area",
    )
    parser.add_argument(
        "--workload",
        action="append",
        default=None,
        help=f"Registered workload ({', '.join(known_workloads())}); repeatable",
    )
    parser.add_argument(
        "--n-total", type=float, default=None, help="Custom workload operation count"
    )
    parser.add_argument("--s-bits", type=float, default=None, help="Custom workload traffic (bits)")
    parser.add_argument(
        "--efficiency",
        default=EfficiencyConvention.BIT.value,
        choices=[c.value for c in EfficiencyConvention],
        help="Efficiency convention: bit (2 ops per switching event) or word",
    )


def _profiles(ctx: CommandContext) -> List[WorkloadProfile]:
    args = ctx.args
    profiles = [get_factory(name)(ctx.config) for name in args.workload or []]
    if args.n_total is not None or args.s_bits is not None:
        profiles.append(
            WorkloadProfile(name="custom", n_total=args.n_total or 0.0, s=args.s_bits or 0.0)
        )
    if not profiles:
        profiles = [get_factory(name)(ctx.config) for name in known_workloads()]
    return profiles


def run(ctx: CommandContext) -> int:
    convention = EfficiencyConvention(ctx.args.efficiency)
    cfg = ctx.config
    profiles = _profiles(ctx)
    reports = [
        evaluate(cfg.arch(), cfg.memory(), cfg.conversion(), wl, convention) for wl in profiles
    ]
    for report in reports:
        logger.info(
            "Workload evaluated",
            workload=report.workload,
            sustained_tops=report.sustained * 1e-12,
            peak_tops=report.peak * 1e-12,
        )

    ctx.store.save_reports(reports, profiles)
    ctx.emit([{"report": r, "profile": p} for r, p in zip(reports, profiles)])
    return 0
