"""
Spectral Vlasov kernel: elementwise complex multiply-accumulate in Fourier
space, one mode per virtual cell, and the circular convolution built on it.
"""

from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ..core.errors import DimensionError
from ..core.logger import get_logger
from ..mesh import LoadInput, LocalMAC, MacOp, MeshConfig, Program, SimStats, StoreOutput, execute
from ..models.models import ArchConfig, WorkloadProfile
from ..perf.model import OPS_PER_MAC

logger = get_logger(__name__)

MACS_PER_MODE = 6
VALUES_PER_MODE = 6
IMAG_RESIDUE_TOLERANCE = 1e-9

SLOT_ONE, SLOT_KR, SLOT_KI = range(3)
REG_ZR, REG_ZI, REG_FR, REG_FI, REG_TEMP, REG_ZERO = range(6)

_PARTS = ("f_real", "f_imag", "k_real", "k_imag", "z_real", "z_imag")


class SpectralConfig(BaseModel):
    """
    Fourier modes f, constants k and inputs z, each n_modes complex values.

    Stored as real and imaginary parts so the record reads from plain JSON.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    f_real: Tuple[float, ...]
    f_imag: Tuple[float, ...]
    k_real: Tuple[float, ...]
    k_imag: Tuple[float, ...]
    z_real: Tuple[float, ...]
    z_imag: Tuple[float, ...]

    @model_validator(mode="after")
    def _equal_lengths(self) -> "SpectralConfig":
        sizes = {name: len(getattr(self, name)) for name in _PARTS}
        if len(set(sizes.values())) != 1:
            raise ValueError(f"all parts must have equal length, got {sizes}")
        if self.n_modes < 1:
            raise ValueError("at least one Fourier mode is required")
        return self

    @property
    def n_modes(self) -> int:
        return len(self.f_real)

    @property
    def f_hat(self) -> np.ndarray:
        return np.asarray(self.f_real) + 1j * np.asarray(self.f_imag)

    @property
    def k_hat(self) -> np.ndarray:
        return np.asarray(self.k_real) + 1j * np.asarray(self.k_imag)

    @property
    def z_hat(self) -> np.ndarray:
        return np.asarray(self.z_real) + 1j * np.asarray(self.z_imag)

    @classmethod
    def from_complex(cls, f_hat, k_hat, z_hat) -> "SpectralConfig":
        """
        Build from three complex sequences.

        Raises:
            DimensionError: The sequences differ in length or are empty
        """
        f_hat, k_hat, z_hat = (
            np.asarray(v, dtype=np.complex128).reshape(-1) for v in (f_hat, k_hat, z_hat)
        )
        if not f_hat.size == k_hat.size == z_hat.size:
            raise DimensionError(
                f"f_hat, k_hat and z_hat must have equal length, got "
                f"{f_hat.size}, {k_hat.size}, {z_hat.size}"
            )
        if f_hat.size < 1:
            raise DimensionError("at least one Fourier mode is required")
        return cls(
            f_real=f_hat.real.tolist(),
            f_imag=f_hat.imag.tolist(),
            k_real=k_hat.real.tolist(),
            k_imag=k_hat.imag.tolist(),
            z_real=z_hat.real.tolist(),
            z_imag=z_hat.imag.tolist(),
        )

    @classmethod
    def random(cls, n_modes: int, seed: int) -> "SpectralConfig":
        rng = np.random.default_rng(seed)

        def draw() -> np.ndarray:
            return rng.uniform(-1.0, 1.0, n_modes) + 1j * rng.uniform(-1.0, 1.0, n_modes)

        return cls.from_complex(f_hat=draw(), k_hat=draw(), z_hat=draw())


def vlasov_oracle(k_hat, z_hat, f_hat):
    """f + k*z, evaluated in the six-MAC order of the mesh kernel (scalars or arrays)."""
    k_hat, z_hat, f_hat = (np.asarray(v, dtype=np.complex128) for v in (k_hat, z_hat, f_hat))
    real = (0.0 + k_hat.real * z_hat.real) - k_hat.imag * z_hat.imag
    imag = (0.0 + k_hat.imag * z_hat.real) + k_hat.real * z_hat.imag
    result = (f_hat.real + 1.0 * real) + 1j * (f_hat.imag + 1.0 * imag)
    return complex(result) if result.ndim == 0 else result


def vlasov_build_program(cfg: SpectralConfig) -> Program:
    """k_hat preloaded in const slots; z_hat and f_hat in on streams 0-3; f_hat out on 0-1."""
    return Program(
        name="vlasov",
        n_points=cfg.n_modes,
        registers=6,
        const_slots=3,
        steps=[
            [
                LoadInput(stream=0, reg=REG_ZR),
                LoadInput(stream=1, reg=REG_ZI),
                LoadInput(stream=2, reg=REG_FR),
                LoadInput(stream=3, reg=REG_FI),
            ],
            [
                LocalMAC(op=MacOp.ADD, a=SLOT_KR, b=REG_ZR, c=REG_ZERO, z=REG_TEMP),
                LocalMAC(op=MacOp.SUB, a=SLOT_KI, b=REG_ZI, c=REG_TEMP, z=REG_TEMP),
                LocalMAC(op=MacOp.ADD, a=SLOT_ONE, b=REG_TEMP, c=REG_FR, z=REG_FR),
                LocalMAC(op=MacOp.ADD, a=SLOT_KI, b=REG_ZR, c=REG_ZERO, z=REG_TEMP),
                LocalMAC(op=MacOp.ADD, a=SLOT_KR, b=REG_ZI, c=REG_TEMP, z=REG_TEMP),
                LocalMAC(op=MacOp.ADD, a=SLOT_ONE, b=REG_TEMP, c=REG_FI, z=REG_FI),
            ],
            [StoreOutput(reg=REG_FR, stream=0), StoreOutput(reg=REG_FI, stream=1)],
        ],
    )


def run_vlasov(cfg: SpectralConfig, mesh: MeshConfig) -> Tuple[np.ndarray, SimStats]:
    """Updated f_hat computed on the mesh."""
    inputs = [cfg.z_hat.real, cfg.z_hat.imag, cfg.f_hat.real, cfg.f_hat.imag]
    preload = {SLOT_ONE: 1.0, SLOT_KR: cfg.k_hat.real, SLOT_KI: cfg.k_hat.imag}
    outputs, stats = execute(vlasov_build_program(cfg), mesh, inputs, preload=preload)
    return outputs[0][0] + 1j * outputs[1][0], stats


def dft_matrix(n: int, inverse: bool = False) -> np.ndarray:
    """Dense n x n DFT matrix; the inverse includes the 1/n factor."""
    idx = np.arange(n)
    sign = 1.0 if inverse else -1.0
    mat = np.exp(sign * 2j * np.pi * np.outer(idx, idx) / n)
    return mat / n if inverse else mat


def circular_convolution(h: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Direct time-domain y[m] = sum_k h[k] * c[(m - k) mod n]."""
    h = np.asarray(h, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    n = h.size
    return np.array([sum(h[k] * c[(m - k) % n] for k in range(n)) for m in range(n)])


def spectral_convolution(
    h: np.ndarray,
    c: np.ndarray,
    n: Optional[int] = None,
    mesh: Optional[MeshConfig] = None,
) -> Tuple[np.ndarray, SimStats]:
    """
    Circular convolution through the frequency domain.

    The transforms are dense DFTs on the host; the pointwise product
    FFT(h) x FFT(c) runs on the mesh with f_hat = 0.

    Raises:
        DimensionError: Inputs are not both of length n
    """
    h = np.asarray(h, dtype=np.float64).reshape(-1)
    c = np.asarray(c, dtype=np.float64).reshape(-1)
    n = h.size if n is None else n
    if h.size != n or c.size != n:
        raise DimensionError(f"inputs must both have length {n}, got {h.size} and {c.size}")
    mesh = mesh or MeshConfig(p=n)

    forward = dft_matrix(n)
    cfg = SpectralConfig.from_complex(f_hat=np.zeros(n), k_hat=forward @ h, z_hat=forward @ c)
    product, stats = run_vlasov(cfg, mesh)
    result = dft_matrix(n, inverse=True) @ product

    residue = float(np.max(np.abs(result.imag)))
    if residue > IMAG_RESIDUE_TOLERANCE * max(1.0, float(np.max(np.abs(result.real)))):
        logger.warning("Convolution has a non-negligible imaginary residue", residue=residue, n=n)
    return result.real, stats


def vlasov_profile(n_modes: int, arch: ArchConfig) -> WorkloadProfile:
    """12 ops and 6 streamed values per mode; k_hat is preloaded."""
    return WorkloadProfile(
        name="vlasov",
        n_total=OPS_PER_MAC * MACS_PER_MODE * n_modes,
        s=VALUES_PER_MODE * arch.w * n_modes,
    )
