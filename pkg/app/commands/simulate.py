"""`simulate`: run a kernel on the mesh simulator and check it against its oracle."""

import argparse
from typing import Any, Dict, List, Optional, Tuple, Type, TypeVar

import numpy as np

from evaluation.metrics_calculator import MetricsCalculator, OracleComparison
from psram.config import load_json_model
from psram.core.errors import ConfigError
from psram.core.logger import get_logger
from psram.mesh import MeshConfig, QuantizationMode, SimStats, profile_to_workload
from psram.perf import evaluate, workload_energy
from psram.workloads import (
    SodConfig,
    SpectralConfig,
    circular_convolution,
    load_tns,
    mttkrp_oracle,
    random_factor,
    random_sparse_tensor,
    run_mttkrp,
    run_sst,
    run_vlasov,
    sod_config,
    spectral_convolution,
    sst_oracle,
    vlasov_oracle,
)

from ..context import CommandContext

logger = get_logger(__name__)

SIMULATED_WORKLOADS = ("sst", "mttkrp", "vlasov", "convolution")

Outputs = Dict[str, np.ndarray]
M = TypeVar("M", SodConfig, SpectralConfig)


def register(
    subparsers: argparse._SubParsersAction, parents: List[argparse.ArgumentParser]
) -> None:
    parser = subparsers.add_parser(
        "simulate", parents=parents, help="Execute a workload on the 1D-mesh simulator"
    )
    parser.add_argument(
        "--workload", required=True, help=f"One of {', '.join(SIMULATED_WORKLOADS)}"
    )
    parser.add_argument(
        "--quantization",
        default=QuantizationMode.REAL.value,
        choices=[m.value for m in QuantizationMode],
    )
    parser.add_argument("--frac-bits", type=int, default=None, help="Fixed-point fraction bits")
    parser.add_argument("--p", type=int, default=None, help="Physical cells (default: N)")
    parser.add_argument("--n", type=int, default=None, help="Grid points (sst) or signal length")
    parser.add_argument("--steps", type=int, default=None, help="Time steps (sst)")
    parser.add_argument("--cfl", type=float, default=None, help="CFL number (sst)")
    parser.add_argument("--n-modes", type=int, default=None, help="Fourier modes (vlasov)")
    parser.add_argument("--tensor", default=None, help=".tns file (mttkrp)")
    parser.add_argument("--rank", type=int, default=None, help="Factor rank R (mttkrp)")
    parser.add_argument("--dims", type=int, nargs=3, default=None, help="Random tensor dims")
    parser.add_argument("--density", type=float, default=None, help="Random tensor density")
    parser.add_argument(
        "--input", default=None, help="SodConfig (sst) or SpectralConfig (vlasov) JSON file"
    )


def _size(value: Optional[int], default: int, flag: str) -> int:
    """An explicit flag wins over the default, and it must be positive."""
    if value is None:
        return int(default)
    if value < 1:
        raise ConfigError(f"{flag} must be >= 1, got {value}")
    return value


def _mesh(ctx: CommandContext, n_points: int) -> MeshConfig:
    args = ctx.args
    mode = QuantizationMode(args.quantization)
    w = ctx.config.w_bits
    frac = args.frac_bits if args.frac_bits is not None else w // 2
    mesh = MeshConfig(
        p=_size(args.p, n_points, "--p"),
        w=w,
        quantization=mode,
        frac_bits=frac if mode is QuantizationMode.FIXED else 0,
    )
    ctx.resolved["mesh"] = mesh.model_dump()
    return mesh


def _load_input(ctx: CommandContext, model: Type[M]) -> Optional[M]:
    if ctx.args.input is None:
        return None
    record = load_json_model(ctx.args.input, model)
    ctx.inputs.append(str(ctx.args.input))
    return record


def _simulate_sst(ctx: CommandContext) -> Tuple[Outputs, np.ndarray, np.ndarray, SimStats]:
    args = ctx.args
    cfg = _load_input(ctx, SodConfig)
    if cfg is None:
        defaults = ctx.defaults.get("workloads", {}).get("sst", {})
        n = _size(args.n, ctx.defaults.get("simulate", {}).get("sst_n", 100), "--n")
        steps = args.steps if args.steps is not None else int(defaults.get("steps", 1))
        cfg = sod_config(n, steps, args.cfl)
    ctx.resolved["sod"] = cfg.model_dump()

    state, stats = run_sst(cfg, _mesh(ctx, cfg.n))
    oracle = sst_oracle(cfg)
    outputs = {"rho": state.w[0], "momentum": state.w[1], "energy": state.w[2]}
    return outputs, state.w, oracle.w, stats


def _simulate_mttkrp(ctx: CommandContext) -> Tuple[Outputs, np.ndarray, np.ndarray, SimStats]:
    args = ctx.args
    defaults = ctx.defaults.get("workloads", {}).get("mttkrp", {})
    seed = ctx.args.seed
    if args.tensor:
        x = load_tns(args.tensor)
        ctx.inputs.append(str(args.tensor))
        ctx.resolved["tensor"] = str(args.tensor)
    else:
        dims = list(args.dims or defaults.get("dims", [8, 8, 8]))
        density = args.density if args.density is not None else float(defaults.get("density", 0.05))
        x = random_sparse_tensor(dims, density, seed)
        ctx.resolved.update(dims=dims, density=density)
    rank = _size(args.rank, defaults.get("rank", 16), "--rank")
    ctx.resolved.update(rank=rank, nnz=x.nnz, tensor_seed=seed, factor_seeds=[seed + 1, seed + 2])
    b = random_factor(x.dims[1], rank, seed + 1)
    c = random_factor(x.dims[2], rank, seed + 2)

    a, stats = run_mttkrp(x, b, c, _mesh(ctx, rank))
    oracle = mttkrp_oracle(x, b, c)
    rows, cols = np.indices(a.data.shape)
    outputs = {"row": rows.reshape(-1), "col": cols.reshape(-1), "a": a.data.reshape(-1)}
    return outputs, a.data, oracle.data, stats


def _simulate_vlasov(ctx: CommandContext) -> Tuple[Outputs, np.ndarray, np.ndarray, SimStats]:
    cfg = _load_input(ctx, SpectralConfig)
    if cfg is None:
        defaults = ctx.defaults.get("workloads", {}).get("vlasov", {})
        n_modes = _size(ctx.args.n_modes, defaults.get("n_modes", 1024), "--n-modes")
        cfg = SpectralConfig.random(n_modes, ctx.args.seed)
        ctx.resolved.update(n_modes=n_modes, seed=ctx.args.seed)
    else:
        ctx.resolved["n_modes"] = cfg.n_modes

    f_hat, stats = run_vlasov(cfg, _mesh(ctx, cfg.n_modes))
    oracle = vlasov_oracle(cfg.k_hat, cfg.z_hat, cfg.f_hat)
    outputs = {"f_real": f_hat.real, "f_imag": f_hat.imag}
    return outputs, np.stack([f_hat.real, f_hat.imag]), np.stack([oracle.real, oracle.imag]), stats


def _simulate_convolution(ctx: CommandContext) -> Tuple[Outputs, np.ndarray, np.ndarray, SimStats]:
    n = _size(ctx.args.n, ctx.defaults.get("simulate", {}).get("convolution_n", 64), "--n")
    ctx.resolved.update(n=n, seed=ctx.args.seed)
    rng = np.random.default_rng(ctx.args.seed)
    h = rng.uniform(-1.0, 1.0, n)
    c = rng.uniform(-1.0, 1.0, n)
    y, stats = spectral_convolution(h, c, n, _mesh(ctx, n))
    return {"h": h, "c": c, "y": y}, y, circular_convolution(h, c), stats


_RUNNERS = {
    "sst": _simulate_sst,
    "mttkrp": _simulate_mttkrp,
    "vlasov": _simulate_vlasov,
    "convolution": _simulate_convolution,
}


def run(ctx: CommandContext) -> int:
    args = ctx.args
    if args.workload not in _RUNNERS:
        raise ConfigError(
            f"unknown workload {args.workload!r} (known: {', '.join(SIMULATED_WORKLOADS)})"
        )
    if args.input is not None and args.workload not in ("sst", "vlasov"):
        raise ConfigError(f"--input applies to sst and vlasov, not {args.workload}")

    outputs, simulated, oracle, stats = _RUNNERS[args.workload](ctx)
    comparison: OracleComparison = MetricsCalculator.compare(
        args.workload, simulated, oracle, ctx.tolerance(args.workload, args.quantization)
    )

    arch = ctx.config.arch()
    profile = profile_to_workload(stats, name=args.workload)
    payload: Dict[str, Any] = {
        "workload": args.workload,
        "quantization": args.quantization,
        "stats": stats,
        "profile": profile,
        "switching_energy_j": workload_energy(arch, stats.switching_events),
        "oracle": comparison.to_dict(),
    }
    if profile.n_total > 0:
        cfg = ctx.config
        payload["report"] = evaluate(arch, cfg.memory(), cfg.conversion(), profile)

    ctx.store.save_simulation(payload, outputs)
    ctx.emit({"stats": stats, "oracle": comparison.to_dict()})

    if not comparison.passed:
        logger.error(
            "Oracle tolerance exceeded",
            workload=args.workload,
            max_rel_error=comparison.max_rel_error,
            tolerance=comparison.tolerance,
        )
        return 2
    logger.info(
        "Oracle check passed", workload=args.workload, max_rel_error=comparison.max_rel_error
    )
    return 0
