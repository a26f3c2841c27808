"""Mesh program, mesh configuration and simulation statistics records."""

from enum import Enum
from typing import Annotated, Iterator, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Direction(str, Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def opposite(self) -> "Direction":
        return Direction.RIGHT if self is Direction.LEFT else Direction.LEFT


class MacOp(str, Enum):
    ADD = "add"
    SUB = "sub"


class _Instr(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class LocalMAC(_Instr):
    """z = c + a*b (add) or z = c - a*b (sub); `a` is a constant slot."""
    kind: Literal["LocalMAC"] = "LocalMAC"
    op: MacOp
    a: int = Field(..., ge=0, description="Constant slot index")
    b: int = Field(..., ge=0, description="Register index")
    c: int = Field(..., ge=0, description="Register index")
    z: int = Field(..., ge=0, description="Destination register index")


class Send(_Instr):
    kind: Literal["Send"] = "Send"
    dir: Direction
    reg: int = Field(..., ge=0)


class Recv(_Instr):
    kind: Literal["Recv"] = "Recv"
    dir: Direction
    reg: int = Field(..., ge=0)


class LoadInput(_Instr):
    kind: Literal["LoadInput"] = "LoadInput"
    stream: int = Field(..., ge=0)
    reg: int = Field(..., ge=0)


class StoreOutput(_Instr):
    kind: Literal["StoreOutput"] = "StoreOutput"
    reg: int = Field(..., ge=0)
    stream: int = Field(..., ge=0)


class LoadConst(_Instr):
    """Load a const slot mid-stream; a broadcast fetches one value for every cell."""
    kind: Literal["LoadConst"] = "LoadConst"
    stream: int = Field(..., ge=0)
    slot: int = Field(..., ge=0)
    broadcast: bool = False


Instruction = Annotated[
    Union[LocalMAC, Send, Recv, LoadInput, StoreOutput, LoadConst],
    Field(discriminator="kind"),
]


class BoundaryKind(str, Enum):
    ZERO_GRADIENT = "zero_gradient"
    FIXED = "fixed"
    ZERO = "zero"


class BoundaryPolicy(BaseModel):
    """What a Recv from a missing neighbour returns at the mesh edges."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: BoundaryKind = BoundaryKind.ZERO_GRADIENT
    value: float = 0.0

    @classmethod
    def zero_gradient(cls) -> "BoundaryPolicy":
        return cls(kind=BoundaryKind.ZERO_GRADIENT)

    @classmethod
    def fixed(cls, value: float) -> "BoundaryPolicy":
        return cls(kind=BoundaryKind.FIXED, value=value)

    @classmethod
    def zero(cls) -> "BoundaryPolicy":
        return cls(kind=BoundaryKind.ZERO)


class Program(BaseModel):
    """
    SPMD program: every virtual cell runs the same steps.

    The body (`steps`) is repeated `iterations` times; registers and const
    slots persist across iterations. Stream indices are dense from 0 within
    each of the input, output and const namespaces.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = "program"
    n_points: int = Field(..., ge=1, description="Virtual cells N")
    registers: int = Field(..., ge=1)
    const_slots: int = Field(..., ge=1)
    steps: List[List[Instruction]] = Field(default_factory=list)
    iterations: int = Field(1, ge=0)
    boundary: BoundaryPolicy = Field(default_factory=BoundaryPolicy)
    fuse_exchange: bool = True
    index_bits_per_iteration: int = Field(0, ge=0)

    def instructions(self) -> Iterator[Tuple[int, object]]:
        for step_index, step in enumerate(self.steps):
            for instr in step:
                yield step_index, instr

    def count(self, kind: type) -> int:
        """Instructions of one kind in the body."""
        return sum(1 for _, instr in self.instructions() if isinstance(instr, kind))

    def stream_counts(self) -> Tuple[int, int, int]:
        """(input, output, const) stream counts implied by the body."""
        inputs = outputs = consts = 0
        for _, instr in self.instructions():
            if isinstance(instr, LoadInput):
                inputs = max(inputs, instr.stream + 1)
            elif isinstance(instr, StoreOutput):
                outputs = max(outputs, instr.stream + 1)
            elif isinstance(instr, LoadConst):
                consts = max(consts, instr.stream + 1)
        return inputs, outputs, consts


class QuantizationMode(str, Enum):
    REAL = "real"
    FIXED = "fixed"


class MeshConfig(BaseModel):
    """Physical mesh: p cells of w bits, real or fixed-point arithmetic."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    p: int = Field(..., ge=1)
    w: int = Field(8, ge=1)
    quantization: QuantizationMode = QuantizationMode.REAL
    frac_bits: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _frac_fits(self) -> "MeshConfig":
        if self.quantization is QuantizationMode.FIXED and self.frac_bits >= self.w:
            raise ValueError(f"frac_bits={self.frac_bits} must be < w={self.w}")
        return self

    @property
    def accumulator_bits(self) -> int:
        return 2 * self.w + 8


class SimStats(BaseModel):
    """Counters collected by one simulation run."""
    model_config = ConfigDict(extra="forbid")

    mac_cycles: int = 0
    io_cycles: int = 0
    comm_cycles: int = 0
    fused_exchanges: int = 0
    total_cycles_fused: int = 0
    total_cycles_unfused: int = 0
    io_bits: int = 0
    io_values: int = 0
    index_bits: int = 0
    macs_executed: int = 0
    switching_events: int = 0
    total_cycles: int = 0
    per_cell_cycles: List[int] = Field(default_factory=list)
    w: int = 8
