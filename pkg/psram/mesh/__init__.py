"""1D-mesh functional simulator: programs, host streams and execution."""

from .program import (
    BoundaryKind,
    BoundaryPolicy,
    Direction,
    Instruction,
    LoadConst,
    LoadInput,
    LocalMAC,
    MacOp,
    MeshConfig,
    Program,
    QuantizationMode,
    Recv,
    Send,
    SimStats,
    StoreOutput,
)
from .simulator import block_distribution, execute, profile_to_workload, quantize
from .streams import ArrayStreams, StreamSource

__all__ = [
    "BoundaryKind",
    "BoundaryPolicy",
    "Direction",
    "Instruction",
    "LoadConst",
    "LoadInput",
    "LocalMAC",
    "MacOp",
    "MeshConfig",
    "Program",
    "QuantizationMode",
    "Recv",
    "Send",
    "SimStats",
    "StoreOutput",
    "block_distribution",
    "execute",
    "profile_to_workload",
    "quantize",
    "ArrayStreams",
    "StreamSource",
]
