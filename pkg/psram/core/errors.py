"""Exception hierarchy for the psram toolkit."""

from typing import Optional


class PsramError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(PsramError, ValueError):
    """Invalid or inconsistent configuration."""


class ModelError(PsramError):
    """The analytical model is undefined for the given inputs."""


class SweepError(PsramError, ValueError):
    """Invalid sweep parameter/axis combination."""


class DimensionError(PsramError, ValueError):
    """Operand shapes do not agree."""


class ProgramError(PsramError):
    """Malformed mesh program (bad register/slot/stream index)."""


class ProtocolError(PsramError):
    """A Recv executed without a matching Send from the neighbour."""

    def __init__(self, message: str, step: int, cell: int, iteration: int = 0):
        super().__init__(f"{message} (iteration={iteration}, step={step}, cell={cell})")
        self.step = step
        self.cell = cell
        self.iteration = iteration


class PositivityError(PsramError):
    """Density or pressure became non-positive during an Euler update."""

    def __init__(self, index: int, step: int, substep: str, quantity: str, value: float):
        super().__init__(
            f"non-positive {quantity}={value!r} at grid index {index}, "
            f"step {step} ({substep}); reduce k"
        )
        self.index = index
        self.step = step
        self.substep = substep
        self.quantity = quantity
        self.value = value


class TensorParseError(PsramError, ValueError):
    """Malformed .tns coordinate text."""

    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line = line
