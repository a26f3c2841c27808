"""
Synchronous 1D-mesh functional simulator.

N virtual cells are block-distributed over p physical cells. Values are
computed for all virtual cells at once (the result never depends on p);
p only enters the cycle accounting, where each physical cell serially
emulates the virtual cells of its block.
"""

from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.errors import ProgramError, ProtocolError
from ..core.logger import get_logger
from ..models.models import WorkloadProfile
from ..perf.model import OPS_PER_MAC
from .program import (
    BoundaryKind,
    BoundaryPolicy,
    Direction,
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
from .streams import ArrayStreams, StreamSource

logger = get_logger(__name__)


def block_distribution(n: int, p: int) -> List[range]:
    """
    Contiguous, ordered blocks covering range(n).

    The first n mod p blocks hold ceil(n/p) points, the rest floor(n/p);
    when p > n the trailing p - n blocks are empty.
    """
    if n < 1 or p < 1:
        raise ValueError(f"block_distribution needs n >= 1 and p >= 1, got n={n}, p={p}")
    q, r = divmod(n, p)
    blocks = []
    start = 0
    for i in range(p):
        size = q + 1 if i < r else q
        blocks.append(range(start, start + size))
        start += size
    return blocks


def quantize(value: Union[float, np.ndarray], mesh: MeshConfig) -> Union[float, np.ndarray]:
    """
    Round half-to-even onto the signed w-bit grid with frac_bits fractional bits.

    Out-of-range values saturate at the representable extremes. Real mode is
    the identity.
    """
    if mesh.quantization is QuantizationMode.REAL:
        return value
    scale = float(2 ** mesh.frac_bits)
    lo = -(2 ** (mesh.w - 1))
    hi = 2 ** (mesh.w - 1) - 1
    q = np.clip(np.rint(np.asarray(value, dtype=np.float64) * scale), lo, hi) / scale
    return float(q) if np.ndim(q) == 0 else q


def _clip_accumulator(values: np.ndarray, mesh: MeshConfig) -> np.ndarray:
    if mesh.quantization is QuantizationMode.REAL:
        return values
    # products of two frac_bits operands carry 2*frac_bits fractional bits
    limit = 2.0 ** (mesh.accumulator_bits - 1 - 2 * mesh.frac_bits)
    return np.clip(values, -limit, limit)


def profile_to_workload(stats: SimStats, name: str = "simulated") -> WorkloadProfile:
    """Model symbols of a run: N_total = 2 x MACs, S = streamed plus index bits."""
    return WorkloadProfile(
        name=name,
        n_total=OPS_PER_MAC * stats.macs_executed,
        s=stats.io_bits + stats.index_bits,
    )


def _validate(program: Program) -> None:
    for step_index, instr in program.instructions():
        regs: Tuple[int, ...] = ()
        slots: Tuple[int, ...] = ()
        if isinstance(instr, LocalMAC):
            regs, slots = (instr.b, instr.c, instr.z), (instr.a,)
        elif isinstance(instr, (Send, Recv, LoadInput, StoreOutput)):
            regs = (instr.reg,)
        elif isinstance(instr, LoadConst):
            slots = (instr.slot,)
        for r in regs:
            if r >= program.registers:
                raise ProgramError(
                    f"{instr.kind} at step {step_index}: register {r} out of range "
                    f"(registers={program.registers})"
                )
        for s in slots:
            if s >= program.const_slots:
                raise ProgramError(
                    f"{instr.kind} at step {step_index}: const slot {s} out of range "
                    f"(const_slots={program.const_slots})"
                )

    for step_index, step in enumerate(program.steps):
        for direction in Direction:
            sends = [i for i in step if isinstance(i, Send) and i.dir is direction]
            if len(sends) > 1:
                raise ProgramError(f"step {step_index}: more than one Send({direction.value})")


def _check_protocol(
    program: Program, step_index: int, step: Sequence[object], iteration: int
) -> None:
    if program.n_points == 1:
        return
    sent = {i.dir for i in step if isinstance(i, Send)}
    for instr in step:
        if isinstance(instr, Recv) and instr.dir.opposite not in sent:
            # lowest-indexed cell that has a neighbour on that side
            cell = 0 if instr.dir is Direction.RIGHT else 1
            raise ProtocolError(
                f"Recv({instr.dir.value}) without a matching Send({instr.dir.opposite.value})",
                step=step_index,
                cell=cell,
                iteration=iteration,
            )


def _receive(sent: np.ndarray, direction: Direction, boundary: BoundaryPolicy) -> np.ndarray:
    """Values arriving at every cell from its neighbour in `direction`."""
    received = np.empty_like(sent)
    if direction is Direction.RIGHT:
        received[:-1] = sent[1:]
        edge, own = -1, sent[-1]
    else:
        received[1:] = sent[:-1]
        edge, own = 0, sent[0]

    if boundary.kind is BoundaryKind.ZERO_GRADIENT:
        received[edge] = own
    elif boundary.kind is BoundaryKind.FIXED:
        received[edge] = boundary.value
    else:
        received[edge] = 0.0
    return received


def _preload(
    consts: np.ndarray,
    preload: Optional[Mapping[int, object]],
    program: Program,
    mesh: MeshConfig,
) -> None:
    for slot, values in (preload or {}).items():
        if not 0 <= slot < program.const_slots:
            raise ProgramError(
                f"preload slot {slot} out of range (const_slots={program.const_slots})"
            )
        arr = np.broadcast_to(np.asarray(values, dtype=np.float64), (program.n_points,))
        consts[slot] = quantize(arr, mesh)


def execute(
    program: Program,
    mesh: MeshConfig,
    inputs: Union[StreamSource, Sequence[object]],
    consts: Optional[Sequence[object]] = None,
    preload: Optional[Mapping[int, object]] = None,
) -> Tuple[Dict[int, np.ndarray], SimStats]:
    """
    Run a program on the mesh.

    Args:
        program: SPMD program
        mesh: Physical mesh (p cells, w bits, quantization)
        inputs: A StreamSource, or input stream arrays shaped (iterations, N)
        consts: Const stream arrays for LoadConst when `inputs` is an array list
        preload: Const slot values loaded before timing starts (slot -> scalar or (N,))

    Returns:
        (output streams keyed by stream index, SimStats)

    Raises:
        ProgramError: Register/slot/stream index out of range
        ProtocolError: Recv without a matching Send
    """
    _validate(program)
    n = program.n_points
    source = inputs if isinstance(inputs, StreamSource) else ArrayStreams(
        inputs, consts or [], n, program.iterations
    )

    blocks = block_distribution(n, mesh.p)
    block_sizes = np.array([len(b) for b in blocks], dtype=np.int64)
    span = int(block_sizes.max())

    regs = np.zeros((program.registers, n))
    slots = np.zeros((program.const_slots, n))
    _preload(slots, preload, program, mesh)

    stats = SimStats(w=mesh.w)
    per_cell = np.zeros(mesh.p, dtype=np.int64)
    has_mac = [any(isinstance(i, LocalMAC) for i in step) for step in program.steps]

    log = logger.bind(program=program.name, n=n, p=mesh.p, iterations=program.iterations)
    log.info("Simulation started")

    for t in range(program.iterations):
        for s, step in enumerate(program.steps):
            _check_protocol(program, s, step, t)
            # synchronous exchange: every Send reads the pre-step register file
            sent = {i.dir: regs[i.reg].copy() for i in step if isinstance(i, Send)}
            pairs = 0

            for instr in step:
                if isinstance(instr, LocalMAC):
                    prod = slots[instr.a] * regs[instr.b]
                    acc = regs[instr.c] + prod if instr.op is MacOp.ADD else regs[instr.c] - prod
                    regs[instr.z] = quantize(_clip_accumulator(acc, mesh), mesh)
                    stats.macs_executed += n
                    stats.mac_cycles += span
                    per_cell += block_sizes
                elif isinstance(instr, Recv):
                    # a lone cell only ever sees the boundary
                    outgoing = sent.get(instr.dir.opposite, regs[instr.reg])
                    regs[instr.reg] = _receive(outgoing, instr.dir, program.boundary)
                    pairs += 1
                elif isinstance(instr, LoadInput):
                    regs[instr.reg] = quantize(
                        np.asarray(source.read_input(instr.stream, t), dtype=np.float64), mesh
                    )
                    stats.io_values += n
                    stats.io_cycles += span
                    per_cell += block_sizes
                elif isinstance(instr, StoreOutput):
                    source.write_output(instr.stream, t, regs[instr.reg].copy())
                    stats.io_values += n
                    stats.io_cycles += span
                    per_cell += block_sizes
                elif isinstance(instr, LoadConst):
                    values = source.read_const(instr.stream, t, instr.broadcast)
                    slots[instr.slot] = quantize(
                        np.broadcast_to(np.asarray(values, dtype=np.float64), (n,)), mesh
                    )
                    if instr.broadcast:
                        stats.io_values += 1
                        stats.io_cycles += 1
                        per_cell += 1
                    else:
                        stats.io_values += n
                        stats.io_cycles += span
                        per_cell += block_sizes

            if pairs:
                stats.comm_cycles += pairs
                fused = has_mac[s] or (s > 0 and has_mac[s - 1])
                if fused:
                    stats.fused_exchanges += pairs
                if not (fused and program.fuse_exchange):
                    per_cell += pairs
            log.debug("Step executed", iteration=t, step=s)

    stats.total_cycles_unfused = stats.mac_cycles + stats.io_cycles + stats.comm_cycles
    stats.total_cycles_fused = stats.total_cycles_unfused - stats.fused_exchanges
    stats.total_cycles = (
        stats.total_cycles_fused if program.fuse_exchange else stats.total_cycles_unfused
    )
    stats.io_bits = stats.io_values * mesh.w
    stats.index_bits = program.iterations * program.index_bits_per_iteration
    stats.switching_events = stats.macs_executed * mesh.w
    stats.per_cell_cycles = per_cell.tolist()

    log.info(
        "Simulation finished",
        macs=stats.macs_executed,
        mac_cycles=stats.mac_cycles,
        io_bits=stats.io_bits,
    )
    return source.outputs(), stats
