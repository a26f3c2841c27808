"""`roofline`: place workloads on the roofline of the configured machine."""

import argparse
from typing import List

import pandas as pd

from psram.core.errors import ConfigError
from psram.core.logger import get_logger
from psram.models.models import SweepParameter, WorkloadProfile
from psram.perf import machine_model, roofline_report, roofline_shift
from psram.workloads import get_factory, known_workloads

from ..context import CommandContext

logger = get_logger(__name__)

SHIFT_COLUMNS = ["workload", "parameter", "value", "ai", "attainable", "bound"]


def register(
    subparsers: argparse._SubParsersAction, parents: List[argparse.ArgumentParser]
) -> None:
    parser = subparsers.add_parser(
        "roofline", parents=parents, help="Classify workloads as compute- or memory-bound"
    )
    parser.add_argument(
        "--workload",
        action="append",
        default=None,
        help=f"Workload ({', '.join(known_workloads())}); repeatable, default all",
    )
    parser.add_argument(
        "--custom",
        action="append",
        default=None,
        metavar="NAME:N_TOTAL:S_BITS",
        help="Custom workload point; repeatable",
    )
    parser.add_argument("--roofs-only", action="store_true", help="Emit the roofs without points")
    parser.add_argument("--ai-min", type=float, default=None)
    parser.add_argument("--ai-max", type=float, default=None)
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument(
        "--shift",
        default=None,
        help="Also re-classify each workload as bitwidth, bandwidth or frequency varies",
    )
    parser.add_argument("--values", type=float, nargs="+", default=None, help="Values for --shift")


def _custom(text: str) -> WorkloadProfile:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--custom expects NAME:N_TOTAL:S_BITS, got {text!r}")
    try:
        return WorkloadProfile(name=parts[0], n_total=float(parts[1]), s=float(parts[2]))
    except ValueError as e:
        raise ConfigError(f"--custom {text!r}: {e}") from e


def run(ctx: CommandContext) -> int:
    args = ctx.args
    sampling = ctx.defaults.get("roofline", {})

    names = args.workload or []
    customs = [_custom(s) for s in args.custom or []]
    if not names and not customs and not args.roofs_only:
        names = known_workloads()
    if args.roofs_only:
        names, customs = [], []
    factories = {name: get_factory(name) for name in names}
    profiles = [factory(ctx.config) for factory in factories.values()] + customs

    machine = machine_model(ctx.config)
    report = roofline_report(
        machine,
        profiles,
        ai_min=args.ai_min if args.ai_min is not None else float(sampling.get("ai_min", 0.01)),
        ai_max=args.ai_max if args.ai_max is not None else float(sampling.get("ai_max", 100.0)),
        samples=args.samples if args.samples is not None else int(sampling.get("samples", 16)),
    )
    for point in report.points:
        logger.info(
            "Workload classified", workload=point.workload, ai=point.ai, bound=point.bound.value
        )
    ctx.store.save_roofline(report)

    summary = {
        "ridge": report.ridge,
        "points": [
            {"workload": p.workload, "ai": p.ai, "bound": p.bound.value} for p in report.points
        ],
    }

    if args.shift:
        if not args.values:
            raise ConfigError("--shift needs --values")
        try:
            parameter = SweepParameter(args.shift)
        except ValueError:
            raise ConfigError(f"unknown shift parameter {args.shift!r}") from None
        rows = []
        for name, factory in factories.items():
            points = roofline_shift(ctx.config, factory, parameter, args.values)
            rows += [
                {
                    "workload": name,
                    "parameter": parameter.value,
                    "value": value,
                    "ai": p.ai,
                    "attainable": p.attainable,
                    "bound": p.bound.value,
                }
                for value, p in zip(args.values, points)
            ]
        if ctx.store.wants_json:
            ctx.store.write_json("roofline_shift.json", rows)
        if ctx.store.wants_csv:
            ctx.store.write_csv(
                "roofline_shift.csv",
                pd.DataFrame(rows, columns=SHIFT_COLUMNS),
            )
        summary["shift"] = rows

    ctx.emit(summary)
    return 0
