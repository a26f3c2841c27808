"""
1D Euler equations: conserved/primitive conversion, physical flux and
wave-speed bound.

State arrays are shaped (3, N) with rows (rho, rho*u, E).
"""

from typing import Tuple

import numpy as np

from ..core.errors import PositivityError

DEFAULT_GAMMA = 1.4


def conserved(
    rho: np.ndarray, u: np.ndarray, p: np.ndarray, gamma: float = DEFAULT_GAMMA
) -> np.ndarray:
    rho = np.asarray(rho, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    energy = p / (gamma - 1.0) + 0.5 * rho * u * u
    return np.stack([rho, rho * u, energy])


def primitive(
    w: np.ndarray, gamma: float = DEFAULT_GAMMA
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(rho, u, p) of a conserved state."""
    rho, mom, energy = w
    u = mom / rho
    p = (gamma - 1.0) * (energy - 0.5 * rho * u * u)
    return rho, u, p


def physical_flux(w: np.ndarray, gamma: float = DEFAULT_GAMMA) -> np.ndarray:
    """F(W) = (rho*u, rho*u^2 + p, (E + p)*u)."""
    rho, u, p = primitive(w, gamma)
    return np.stack([rho * u, rho * u * u + p, (w[2] + p) * u])


def max_wave_speed(w: np.ndarray, gamma: float = DEFAULT_GAMMA) -> float:
    """Global bound max(|u| + c) over the grid."""
    rho, u, p = primitive(w, gamma)
    return float(np.max(np.abs(u) + np.sqrt(gamma * p / rho)))


def check_positivity(w: np.ndarray, gamma: float, step: int, substep: str) -> None:
    """
    Raise PositivityError at the first grid point with rho <= 0 or p <= 0.

    Non-finite values count as violations.
    """
    rho = w[0]
    bad = np.flatnonzero(~(rho > 0))
    if bad.size:
        i = int(bad[0])
        raise PositivityError(i, step, substep, "density", float(rho[i]))

    _, _, p = primitive(w, gamma)
    bad = np.flatnonzero(~(p > 0))
    if bad.size:
        i = int(bad[0])
        raise PositivityError(i, step, substep, "pressure", float(p[i]))
