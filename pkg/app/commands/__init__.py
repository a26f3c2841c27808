"""Subcommands: model, sweep, roofline, simulate."""

from . import model, roofline, simulate, sweep

COMMANDS = {
    "model": model,
    "sweep": sweep,
    "roofline": roofline,
    "simulate": simulate,
}

__all__ = ["COMMANDS"]
