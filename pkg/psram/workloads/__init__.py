"""Streaming kernels: Sod shock tube, MTTKRP and the spectral Vlasov product."""

from .euler import check_positivity, conserved, max_wave_speed, physical_flux, primitive
from .mttkrp import (
    MttkrpStreams,
    mttkrp_build_program,
    mttkrp_dense,
    mttkrp_oracle,
    mttkrp_profile,
    run_mttkrp,
)
from .registry import WORKLOADS, get_factory, known_workloads, sod_config
from .sod import (
    EulerState,
    SodConfig,
    SodStreams,
    initial_state,
    run_sst,
    sst_build_program,
    sst_flux_update,
    sst_interface_fluxes,
    sst_oracle,
    sst_oracle_step,
    sst_preload,
    sst_profile,
)
from .tensor import (
    FactorMatrix,
    SparseTensor,
    load_tns,
    parse_tns,
    random_factor,
    random_sparse_tensor,
)
from .vlasov import (
    SpectralConfig,
    circular_convolution,
    dft_matrix,
    run_vlasov,
    spectral_convolution,
    vlasov_build_program,
    vlasov_oracle,
    vlasov_profile,
)

__all__ = [
    "check_positivity",
    "conserved",
    "max_wave_speed",
    "physical_flux",
    "primitive",
    "MttkrpStreams",
    "mttkrp_build_program",
    "mttkrp_dense",
    "mttkrp_oracle",
    "mttkrp_profile",
    "run_mttkrp",
    "WORKLOADS",
    "get_factory",
    "known_workloads",
    "sod_config",
    "EulerState",
    "SodConfig",
    "SodStreams",
    "initial_state",
    "run_sst",
    "sst_build_program",
    "sst_flux_update",
    "sst_interface_fluxes",
    "sst_oracle",
    "sst_oracle_step",
    "sst_preload",
    "sst_profile",
    "FactorMatrix",
    "SparseTensor",
    "load_tns",
    "parse_tns",
    "random_factor",
    "random_sparse_tensor",
    "SpectralConfig",
    "circular_convolution",
    "dft_matrix",
    "run_vlasov",
    "spectral_convolution",
    "vlasov_build_program",
    "vlasov_oracle",
    "vlasov_profile",
]
