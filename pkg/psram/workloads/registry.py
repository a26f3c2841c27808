"""Named workload factories used by sweeps, roofline and the CLI."""

from typing import Any, Dict, List, Optional

from ..config import get_config
from ..core.errors import ConfigError
from ..mesh import BoundaryKind, BoundaryPolicy
from ..models.models import SystemConfig, WorkloadProfile
from ..perf.sweep import WorkloadFactory
from .mttkrp import mttkrp_profile
from .sod import SodConfig, sst_profile
from .vlasov import vlasov_profile


def _workload_defaults(name: str) -> Dict[str, Any]:
    return get_config().get("workloads", {}).get(name, {})


def sod_config(n: int, steps: int, cfl: Optional[float] = None) -> SodConfig:
    """Sod problem with the packaged initial states, gamma, boundary and CFL number."""
    sod = get_config().get("sod", {})
    kind = BoundaryKind(sod.get("boundary", BoundaryKind.ZERO_GRADIENT.value))
    boundary = BoundaryPolicy(kind=kind, value=float(sod.get("boundary_value", 0.0)))
    return SodConfig.from_cfl(
        n,
        steps=steps,
        cfl=cfl if cfl is not None else float(sod.get("cfl", 0.4)),
        gamma=float(sod.get("gamma", 1.4)),
        left=tuple(sod.get("left", (1.0, 0.0, 1.0))),
        right=tuple(sod.get("right", (0.125, 0.0, 0.1))),
        boundary=boundary,
    )


def sst_factory(config: SystemConfig, n: Optional[int] = None) -> WorkloadProfile:
    defaults = _workload_defaults("sst")
    cfg = sod_config(n or int(defaults.get("n", 100000)), int(defaults.get("steps", 1)))
    return sst_profile(cfg, config.arch())


def mttkrp_factory(config: SystemConfig, n: Optional[int] = None) -> WorkloadProfile:
    """`n` is the nonzero count."""
    defaults = _workload_defaults("mttkrp")
    nnz = n or int(defaults.get("nnz", 1000))
    return mttkrp_profile(nnz, int(defaults.get("rank", 16)), config.arch())


def vlasov_factory(config: SystemConfig, n: Optional[int] = None) -> WorkloadProfile:
    """`n` is the number of Fourier modes."""
    n_modes = n or int(_workload_defaults("vlasov").get("n_modes", 1024))
    return vlasov_profile(n_modes, config.arch())


WORKLOADS: Dict[str, WorkloadFactory] = {
    "sst": sst_factory,
    "mttkrp": mttkrp_factory,
    "vlasov": vlasov_factory,
}


def known_workloads() -> List[str]:
    return sorted(WORKLOADS)


def get_factory(name: str) -> WorkloadFactory:
    """
    Look up a workload factory by name.

    Raises:
        ConfigError: Unknown name (the message lists the known ones)
    """
    try:
        return WORKLOADS[name]
    except KeyError:
        raise ConfigError(
            f"unknown workload {name!r} (known: {', '.join(known_workloads())})"
        ) from None
