"""
Mode-0 MTTKRP, A(h0, r) = sum X(h0,h1,h2) * B(h1,r) * C(h2,r).

The mesh holds R virtual cells, cell r owning column r. Nonzeros stream
through in sorted order; for each one the cell forms the Hadamard term
B(h1,r)*C(h2,r) and accumulates it, scaled by the tensor value, into the
A row fetched from host memory.
"""

from typing import Tuple, Union

import numpy as np

from ..core.errors import DimensionError
from ..core.logger import get_logger
from ..mesh import (
    LoadConst,
    LoadInput,
    LocalMAC,
    MacOp,
    MeshConfig,
    Program,
    SimStats,
    StoreOutput,
    StreamSource,
    execute,
)
from ..models.models import ArchConfig, WorkloadProfile
from ..perf.model import OPS_PER_MAC
from .tensor import FactorMatrix, SparseTensor

logger = get_logger(__name__)

COORDINATE_BITS = 32
INDEX_BITS_PER_NONZERO = 3 * COORDINATE_BITS

SLOT_B, SLOT_X = 0, 1
REG_C, REG_F, REG_A, REG_ZERO = range(4)


def _check_dims(x: SparseTensor, b: FactorMatrix, c: FactorMatrix) -> None:
    if b.rows != x.dims[1]:
        raise DimensionError(f"B has {b.rows} rows, tensor mode 1 has size {x.dims[1]}")
    if c.rows != x.dims[2]:
        raise DimensionError(f"C has {c.rows} rows, tensor mode 2 has size {x.dims[2]}")
    if b.rank != c.rank:
        raise DimensionError(f"B has rank {b.rank}, C has rank {c.rank}")


def mttkrp_oracle(x: SparseTensor, b: FactorMatrix, c: FactorMatrix) -> FactorMatrix:
    """
    Scalar reference, accumulated in sorted nonzero order.

    Raises:
        DimensionError: Factor rows or ranks do not match the tensor
    """
    _check_dims(x, b, c)
    a = np.zeros((x.dims[0], b.rank))
    for (h0, h1, h2), value in zip(x.coords, x.values):
        a[h0] = a[h0] + value * (b.data[h1] * c.data[h2])
    return FactorMatrix(a)


def mttkrp_dense(x: SparseTensor, b: FactorMatrix, c: FactorMatrix) -> FactorMatrix:
    """Brute-force sum over the dense tensor."""
    _check_dims(x, b, c)
    return FactorMatrix(np.einsum("ijk,jr,kr->ir", x.to_dense(), b.data, c.data))


def mttkrp_build_program(x: SparseTensor, b: FactorMatrix, c: FactorMatrix) -> Program:
    """Fused Hadamard-then-scale schedule, one iteration per nonzero."""
    _check_dims(x, b, c)
    steps = [
        [LoadConst(stream=0, slot=SLOT_B), LoadInput(stream=0, reg=REG_C)],
        [LocalMAC(op=MacOp.ADD, a=SLOT_B, b=REG_C, c=REG_ZERO, z=REG_F)],
        [LoadConst(stream=1, slot=SLOT_X, broadcast=True), LoadInput(stream=1, reg=REG_A)],
        [LocalMAC(op=MacOp.ADD, a=SLOT_X, b=REG_F, c=REG_A, z=REG_A)],
        [StoreOutput(reg=REG_A, stream=0)],
    ]
    return Program(
        name="mttkrp",
        n_points=b.rank,
        registers=4,
        const_slots=2,
        steps=steps,
        iterations=x.nnz,
        index_bits_per_iteration=INDEX_BITS_PER_NONZERO,
    )


class MttkrpStreams(StreamSource):
    """Host memory holding the tensor, both factors and the output matrix A."""

    def __init__(self, x: SparseTensor, b: FactorMatrix, c: FactorMatrix):
        super().__init__(b.rank, x.nnz)
        self.x = x
        self.b = b
        self.c = c
        self.a = np.zeros((x.dims[0], b.rank))

    def read_input(self, stream: int, iteration: int) -> np.ndarray:
        h0, _, h2 = self.x.coords[iteration]
        return self.c.data[h2] if stream == 0 else self.a[h0]

    def read_const(self, stream: int, iteration: int, broadcast: bool) -> np.ndarray:
        if stream == 0:
            return self.b.data[self.x.coords[iteration][1]]
        return np.float64(self.x.values[iteration])

    def write_output(self, stream: int, iteration: int, values: np.ndarray) -> None:
        super().write_output(stream, iteration, values)
        self.a[self.x.coords[iteration][0]] = values


def run_mttkrp(
    x: SparseTensor, b: FactorMatrix, c: FactorMatrix, mesh: MeshConfig
) -> Tuple[FactorMatrix, SimStats]:
    program = mttkrp_build_program(x, b, c)
    source = MttkrpStreams(x, b, c)
    _, stats = execute(program, mesh, source)
    logger.info("MTTKRP run finished", nnz=x.nnz, rank=b.rank, p=mesh.p)
    return FactorMatrix(source.a.copy()), stats


def mttkrp_profile(x: Union[SparseTensor, int], rank: int, arch: ArchConfig) -> WorkloadProfile:
    """
    Closed-form counts for a tensor (or a nonzero count).

    Per nonzero: 2R MACs; B row, C row, A row in and out at w bits plus one
    broadcast tensor value; three 32-bit coordinates.
    """
    nnz = x.nnz if isinstance(x, SparseTensor) else int(x)
    return WorkloadProfile(
        name="mttkrp",
        n_total=OPS_PER_MAC * 2 * rank * nnz,
        s=nnz * ((4 * rank + 1) * arch.w + INDEX_BITS_PER_NONZERO),
    )
