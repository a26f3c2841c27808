"""
Sod shock tube: predictor-corrector flux scheme as an oracle and as a
streaming mesh program.

The nonlinear flux F(W) and the eigenvalue bound j are evaluated on the
host between the two optical passes of a time step; the linear update
runs on the mesh with five MACs per component per pass.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.logger import get_logger
from ..mesh import (
    BoundaryKind,
    BoundaryPolicy,
    Direction,
    LoadConst,
    LoadInput,
    LocalMAC,
    MacOp,
    MeshConfig,
    Program,
    Recv,
    Send,
    SimStats,
    StoreOutput,
    StreamSource,
    execute,
)
from ..models.models import ArchConfig, WorkloadProfile
from ..perf.model import OPS_PER_MAC
from .euler import (
    DEFAULT_GAMMA,
    check_positivity,
    conserved,
    max_wave_speed,
    physical_flux,
    primitive,
)

logger = get_logger(__name__)

Primitive = Tuple[float, float, float]

MACS_PER_POINT_STEP = 30
VALUES_PER_POINT_STEP = 15
BROADCASTS_PER_STEP = 2

# const slots
SLOT_ONE, SLOT_K, SLOT_2K, SLOT_J = range(4)

# per-component register block
_W0, _F, _FR, _FL, _FRN, _FLUX, _FLUXP, _DIFF, _WH, _WN = range(10)
_REGS_PER_COMPONENT = 10


class SodConfig(BaseModel):
    """Sod shock tube problem: grid, time stepping and initial (rho, u, p) states."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(..., ge=1, description="Grid points")
    steps: int = Field(1, ge=0, description="Time steps")
    k: float = Field(..., gt=0, description="dt / (4 dx)")
    gamma: float = Field(DEFAULT_GAMMA, gt=1)
    left: Primitive = (1.0, 0.0, 1.0)
    right: Primitive = (0.125, 0.0, 0.1)
    diaphragm: float = Field(
        0.5, gt=0, lt=1, description="Interface position as a fraction of the tube"
    )
    boundary: BoundaryPolicy = Field(default_factory=BoundaryPolicy)

    @model_validator(mode="after")
    def _physical_states(self) -> "SodConfig":
        for side, (rho, _, p) in (("left", self.left), ("right", self.right)):
            if rho <= 0 or p <= 0:
                raise ValueError(
                    f"{side} state needs positive density and pressure, got rho={rho}, p={p}"
                )
        return self

    @classmethod
    def from_cfl(cls, n: int, steps: int = 1, cfl: float = 0.4, **fields) -> "SodConfig":
        """
        Choose k from a CFL number: dt = cfl * dx / s_max, so k = cfl / (4 * s_max).

        s_max is the largest |u| + c over the two initial states.
        """
        gamma = fields.get("gamma", DEFAULT_GAMMA)
        states = [fields.get("left", (1.0, 0.0, 1.0)), fields.get("right", (0.125, 0.0, 0.1))]
        s_max = max(abs(u) + np.sqrt(gamma * p / rho) for rho, u, p in states)
        return cls(n=n, steps=steps, k=cfl / (4.0 * s_max), **fields)


@dataclass
class EulerState:
    """Conserved state W = (rho, rho*u, E) on the grid, shaped (3, N)."""
    w: np.ndarray
    gamma: float = DEFAULT_GAMMA

    @classmethod
    def from_primitive(cls, rho, u, p, gamma: float = DEFAULT_GAMMA) -> "EulerState":
        return cls(conserved(rho, u, p, gamma), gamma)

    @property
    def n(self) -> int:
        return self.w.shape[1]

    @property
    def rho(self) -> np.ndarray:
        return self.w[0]

    @property
    def pressure(self) -> np.ndarray:
        return primitive(self.w, self.gamma)[2]

    def flux(self) -> np.ndarray:
        return physical_flux(self.w, self.gamma)

    def max_eigenvalue(self) -> float:
        return max_wave_speed(self.w, self.gamma)

    def totals(self) -> np.ndarray:
        """Grid sums of mass, momentum and energy."""
        return self.w.sum(axis=1)


def initial_state(cfg: SodConfig) -> EulerState:
    """Left state for cell centres before the diaphragm, right state after."""
    centres = (np.arange(cfg.n) + 0.5) / cfg.n
    on_left = centres < cfg.diaphragm
    prims = [np.where(on_left, lv, rv) for lv, rv in zip(cfg.left, cfg.right)]
    return EulerState.from_primitive(*prims, gamma=cfg.gamma)


def _ghost(own: np.ndarray, boundary: BoundaryPolicy) -> np.ndarray:
    if boundary.kind is BoundaryKind.ZERO_GRADIENT:
        return own
    if boundary.kind is BoundaryKind.FIXED:
        return np.full_like(own, boundary.value)
    return np.zeros_like(own)


def sst_interface_fluxes(
    w: np.ndarray,
    f: np.ndarray,
    j: float,
    boundary: BoundaryPolicy,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Numerical fluxes on both faces of every cell.

    Returns (flux, flux_prev) where flux[:, i] is the flux through face
    i+1/2, F_i + F_{i+1} + j*W_i - j*W_{i+1}, and flux_prev[:, i] the one
    through face i-1/2. Faces outside the grid take the boundary policy's
    ghost values.
    """
    f_r = f - j * w
    f_l = f + j * w
    f_r_next = np.concatenate([f_r[:, 1:], _ghost(f_r[:, -1:], boundary)], axis=1)
    flux = f_l + 1.0 * f_r_next
    flux_prev = np.concatenate([_ghost(flux[:, :1], boundary), flux[:, :-1]], axis=1)
    return flux, flux_prev


def sst_flux_update(
    base: np.ndarray, flux: np.ndarray, flux_prev: np.ndarray, kappa: float
) -> np.ndarray:
    """base - kappa * (flux - flux_prev)."""
    diff = flux - 1.0 * flux_prev
    return base - kappa * diff


def sst_oracle_step(state: EulerState, cfg: SodConfig, step: int = 0) -> EulerState:
    """
    One predictor-corrector time step.

    Raises:
        PositivityError: rho or p non-positive in the input, predicted or updated state
    """
    gamma = state.gamma
    w = state.w
    check_positivity(w, gamma, step, "predictor")
    flux, flux_prev = sst_interface_fluxes(
        w, physical_flux(w, gamma), max_wave_speed(w, gamma), cfg.boundary
    )
    half = sst_flux_update(w, flux, flux_prev, cfg.k)

    check_positivity(half, gamma, step, "corrector")
    flux, flux_prev = sst_interface_fluxes(
        half, physical_flux(half, gamma), max_wave_speed(half, gamma), cfg.boundary
    )
    new = sst_flux_update(w, flux, flux_prev, 2.0 * cfg.k)
    check_positivity(new, gamma, step, "result")
    return EulerState(new, gamma)


def sst_oracle(cfg: SodConfig, state: Optional[EulerState] = None) -> EulerState:
    """Advance `state` (default: the Sod initial data) by cfg.steps steps."""
    state = state if state is not None else initial_state(cfg)
    for step in range(cfg.steps):
        state = sst_oracle_step(state, cfg, step)
    return state


def _flux_pass(
    component: int,
    state: int,
    base: int,
    kappa_slot: int,
    out: int,
    out_stream: int,
) -> List[List[object]]:
    r = component * _REGS_PER_COMPONENT
    return [
        [
            LocalMAC(op=MacOp.SUB, a=SLOT_J, b=r + state, c=r + _F, z=r + _FR),
            LocalMAC(op=MacOp.ADD, a=SLOT_J, b=r + state, c=r + _F, z=r + _FL),
        ],
        [Send(dir=Direction.LEFT, reg=r + _FR), Recv(dir=Direction.RIGHT, reg=r + _FRN)],
        [LocalMAC(op=MacOp.ADD, a=SLOT_ONE, b=r + _FRN, c=r + _FL, z=r + _FLUX)],
        [Send(dir=Direction.RIGHT, reg=r + _FLUX), Recv(dir=Direction.LEFT, reg=r + _FLUXP)],
        [
            LocalMAC(op=MacOp.SUB, a=SLOT_ONE, b=r + _FLUXP, c=r + _FLUX, z=r + _DIFF),
            LocalMAC(op=MacOp.SUB, a=kappa_slot, b=r + _DIFF, c=r + base, z=r + out),
            StoreOutput(reg=r + out, stream=out_stream),
        ],
    ]


def sst_build_program(cfg: SodConfig) -> Program:
    """
    Streaming program for cfg.steps time steps over cfg.n grid points.

    Input streams: W (0-2), F(W) (3-5), F(W^{t+1/2}) (6-8).
    Output streams: W^{t+1/2} (0-2), W^{t+1} (3-5).
    Const streams: j for the predictor (0) and the corrector (1), broadcast.
    """
    steps: List[List[object]] = [
        [LoadConst(stream=0, slot=SLOT_J, broadcast=True)],
        [
            instr
            for c in range(3)
            for instr in (
                LoadInput(stream=c, reg=c * _REGS_PER_COMPONENT + _W0),
                LoadInput(stream=3 + c, reg=c * _REGS_PER_COMPONENT + _F),
            )
        ],
    ]
    for c in range(3):
        steps += _flux_pass(c, state=_W0, base=_W0, kappa_slot=SLOT_K, out=_WH, out_stream=c)

    steps += [
        [LoadConst(stream=1, slot=SLOT_J, broadcast=True)],
        [LoadInput(stream=6 + c, reg=c * _REGS_PER_COMPONENT + _F) for c in range(3)],
    ]
    for c in range(3):
        steps += _flux_pass(c, state=_WH, base=_W0, kappa_slot=SLOT_2K, out=_WN, out_stream=3 + c)

    return Program(
        name="sst",
        n_points=cfg.n,
        registers=3 * _REGS_PER_COMPONENT,
        const_slots=4,
        steps=steps,
        iterations=cfg.steps,
        boundary=cfg.boundary,
    )


def sst_preload(cfg: SodConfig) -> Dict[int, float]:
    return {SLOT_ONE: 1.0, SLOT_K: cfg.k, SLOT_2K: 2.0 * cfg.k}


class SodStreams(StreamSource):
    """
    Host memory for the Sod program.

    Fluxes and the eigenvalue bound are computed on demand from the state
    the mesh wrote back: W^t from the previous iteration's output (or the
    initial data), W^{t+1/2} from this iteration's predictor output.
    """

    def __init__(self, initial: EulerState, iterations: int):
        super().__init__(initial.n, iterations)
        self.gamma = initial.gamma
        self._initial = initial.w
        self._derived: Dict[Tuple[int, str], Tuple[np.ndarray, float]] = {}

    def state(self, iteration: int) -> np.ndarray:
        if iteration == 0:
            return self._initial
        return np.stack([self._outputs[3 + c][iteration - 1] for c in range(3)])

    def half_state(self, iteration: int) -> np.ndarray:
        return np.stack([self._outputs[c][iteration] for c in range(3)])

    def _flux_and_bound(self, iteration: int, substep: str) -> Tuple[np.ndarray, float]:
        key = (iteration, substep)
        if key not in self._derived:
            w = self.state(iteration) if substep == "predictor" else self.half_state(iteration)
            check_positivity(w, self.gamma, iteration, substep)
            self._derived[key] = (physical_flux(w, self.gamma), max_wave_speed(w, self.gamma))
        return self._derived[key]

    def read_input(self, stream: int, iteration: int) -> np.ndarray:
        if stream < 3:
            return self.state(iteration)[stream]
        if stream < 6:
            return self._flux_and_bound(iteration, "predictor")[0][stream - 3]
        return self._flux_and_bound(iteration, "corrector")[0][stream - 6]

    def read_const(self, stream: int, iteration: int, broadcast: bool) -> np.ndarray:
        substep = "predictor" if stream == 0 else "corrector"
        return np.float64(self._flux_and_bound(iteration, substep)[1])


def run_sst(cfg: SodConfig, mesh: MeshConfig) -> Tuple[EulerState, SimStats]:
    """
    Run the Sod problem on the mesh.

    Raises:
        PositivityError: The state lost positivity (k too large)
    """
    initial = initial_state(cfg)
    source = SodStreams(initial, cfg.steps)
    _, stats = execute(sst_build_program(cfg), mesh, source, preload=sst_preload(cfg))

    if cfg.steps == 0:
        return initial, stats
    final = source.state(cfg.steps)
    check_positivity(final, cfg.gamma, cfg.steps - 1, "result")
    logger.info("Sod run finished", n=cfg.n, steps=cfg.steps, p=mesh.p)
    return EulerState(final.copy(), cfg.gamma), stats


def sst_profile(cfg: SodConfig, arch: ArchConfig) -> WorkloadProfile:
    """Closed-form counts matching the simulator: 60 ops and 15n+2 values per step."""
    n_total = OPS_PER_MAC * MACS_PER_POINT_STEP * cfg.n * cfg.steps
    s = arch.w * cfg.steps * (VALUES_PER_POINT_STEP * cfg.n + BROADCASTS_PER_STEP)
    return WorkloadProfile(name="sst", n_total=n_total, s=s)
