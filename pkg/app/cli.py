"""
psram-perf command line.

    psram-perf [--config PATH] [--out DIR] [--format json|csv|both] [--seed INT]
               {model,sweep,roofline,simulate} ...

Exit codes: 0 success, 1 invalid input, 2 runtime failure or oracle
tolerance exceeded. Reports go to stdout and the output directory; logs
go to stderr.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from psram import __version__
from psram.config import get_config, get_settings, load_system_config
from psram.core.errors import (
    ConfigError,
    DimensionError,
    ModelError,
    PositivityError,
    ProgramError,
    ProtocolError,
    SweepError,
    TensorParseError,
)
from psram.core.logger import bind_run, get_logger, setup_logging
from psram.models.models import RunManifest
from psram.models.storage import FORMATS, ReportStore

from .commands import COMMANDS
from .context import CommandContext

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RUNTIME = 2

INPUT_ERRORS = (
    ConfigError,
    ValidationError,
    TensorParseError,
    FileNotFoundError,
    SweepError,
    DimensionError,
)
RUNTIME_ERRORS = (ProtocolError, PositivityError, ModelError, ProgramError)


class UsageError(Exception):
    """Bad command-line usage."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(f"{self.prog}: {message}")


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--config", default=default(None), help="System configuration JSON")
    parser.add_argument("--out", default=default(None), help="Output directory")
    parser.add_argument("--format", default=default("both"), choices=FORMATS)
    parser.add_argument("--seed", type=int, default=default(0), help="Seed for generated inputs")
    parser.add_argument("--log-level", default=default(None), help="Log level (default LOG_LEVEL)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="psram-perf", description="pSRAM performance modeling toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(parser, suppress=False)

    # global options are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)

    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for module in COMMANDS.values():
        module.register(subparsers, [common])
    return parser


def _options(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("command",)}


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    settings = get_settings()

    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_INVALID

    try:
        setup_logging(args.log_level or settings.log_level)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    bind_run(args.command, seed=args.seed)
    defaults = get_config()
    config_path = Path(args.config or defaults["runtime"]["config_path"])
    out_dir = Path(args.out or Path(settings.output_dir) / args.command)

    try:
        config = load_system_config(config_path)
        float_format = defaults.get("reports", {}).get("csv_float_format", "%.9g")
        store = ReportStore(out_dir, args.format, float_format)
        ctx = CommandContext(
            args=args,
            config=config,
            config_path=config_path,
            defaults=defaults,
            store=store,
            threads=settings.threads,
            inputs=[str(config_path)],
        )
        logger.info("Command started", command=args.command, config_path=str(config_path))
        code = COMMANDS[args.command].run(ctx)

        store.save_manifest(
            RunManifest(
                command=args.command,
                argv=argv,
                config=config.model_dump(),
                options=_options(args),
                defaults=defaults,
                resolved=ctx.resolved,
                inputs=ctx.inputs,
                seed=args.seed,
                version=__version__,
            )
        )
        return code
    except INPUT_ERRORS as e:
        logger.error("Invalid input", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except RUNTIME_ERRORS as e:
        logger.error("Run failed", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
