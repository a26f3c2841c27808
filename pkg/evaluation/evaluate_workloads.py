"""
Oracle-equivalence evaluation for the streaming kernels.
Runs every scenario at several physical cell counts and checks that
simulator outputs match the scalar references and do not depend on p.
"""

import asyncio
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from evaluation.metrics_calculator import MetricsCalculator, OracleComparison
from evaluation.scenarios import SCENARIOS
from psram.config import get_config
from psram.core.logger import get_logger
from psram.mesh import MeshConfig
from psram.workloads import (
    SpectralConfig,
    circular_convolution,
    mttkrp_dense,
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

logger = get_logger(__name__)

Run = Callable[[int], np.ndarray]


class WorkloadEvaluator:
    """Runs the scenario table and collects oracle comparisons."""

    def __init__(self, seed: int = 0, max_concurrent: int = 4):
        self.seed = seed
        self.max_concurrent = max_concurrent
        self.tolerances = get_config().get("tolerances", {}).get("real", {})
        self.calculator = MetricsCalculator()
        self.comparisons: List[OracleComparison] = []
        self.invariance: Dict[str, bool] = {}

    def _sst(self, scenario: Dict[str, Any]) -> Tuple[Run, np.ndarray]:
        cfg = sod_config(scenario["n"], scenario["steps"])
        return (lambda p: run_sst(cfg, MeshConfig(p=p))[0].w), sst_oracle(cfg).w

    def _mttkrp(self, scenario: Dict[str, Any]) -> Tuple[Run, np.ndarray]:
        x = random_sparse_tensor(scenario["dims"], scenario["density"], self.seed)
        b = random_factor(x.dims[1], scenario["rank"], self.seed + 1)
        c = random_factor(x.dims[2], scenario["rank"], self.seed + 2)
        return (lambda p: run_mttkrp(x, b, c, MeshConfig(p=p))[0].data), mttkrp_dense(x, b, c).data

    def _vlasov(self, scenario: Dict[str, Any]) -> Tuple[Run, np.ndarray]:
        cfg = SpectralConfig.random(scenario["n_modes"], self.seed)

        def run(p: int) -> np.ndarray:
            f_hat = run_vlasov(cfg, MeshConfig(p=p))[0]
            return np.stack([f_hat.real, f_hat.imag])

        oracle = vlasov_oracle(cfg.k_hat, cfg.z_hat, cfg.f_hat)
        return run, np.stack([oracle.real, oracle.imag])

    def _convolution(self, scenario: Dict[str, Any]) -> Tuple[Run, np.ndarray]:
        rng = np.random.default_rng(self.seed)
        h = rng.uniform(-1.0, 1.0, scenario["n"])
        c = rng.uniform(-1.0, 1.0, scenario["n"])
        run = lambda p: spectral_convolution(h, c, mesh=MeshConfig(p=p))[0]  # noqa: E731
        return run, circular_convolution(h, c)

    def evaluate_scenario(self, workload: str, scenario: Dict[str, Any]) -> List[OracleComparison]:
        """Compare every p of one scenario with the oracle and with each other."""
        run, oracle = getattr(self, f"_{workload}")(scenario)
        outputs = [run(p) for p in scenario["p"]]
        label = f"{workload} {scenario['name']}"
        tolerance = self.tolerances.get(workload, 0.0)
        results = [
            self.calculator.compare(f"{label} p={p}", out, oracle, tolerance)
            for p, out in zip(scenario["p"], outputs)
        ]
        self.invariance[label] = all(np.array_equal(outputs[0], out) for out in outputs[1:])
        return results

    async def run_all(self) -> Dict[str, Any]:
        """Evaluate every scenario, at most max_concurrent at a time."""
        semaphore = asyncio.Semaphore(self.max_concurrent)

        async def run_one(workload: str, scenario: Dict[str, Any]) -> List[OracleComparison]:
            async with semaphore:
                return await asyncio.to_thread(self.evaluate_scenario, workload, scenario)

        batches = await asyncio.gather(
            *(run_one(w, s) for w, scenarios in SCENARIOS.items() for s in scenarios)
        )
        self.comparisons = [c for batch in batches for c in batch]
        logger.info("Evaluation finished", comparisons=len(self.comparisons))
        return {
            "summary": self.calculator.summarize(self.comparisons),
            "p_invariant": self.invariance,
            "comparisons": [c.to_dict() for c in self.comparisons],
        }


async def main() -> int:
    evaluator = WorkloadEvaluator()
    report = await evaluator.run_all()

    print("=" * 72)
    print("ORACLE EQUIVALENCE")
    print("=" * 72)
    print(MetricsCalculator.format_comparison_table(evaluator.comparisons))
    print()
    for label, ok in report["p_invariant"].items():
        print(f"{label:<40} p-invariant: {'yes' if ok else 'NO'}")

    output_path = project_root / "evaluation" / "evaluation_report.json"
    MetricsCalculator.save_metrics_report(report, output_path)
    print(f"\nReport saved to {output_path}")

    failed = report["summary"]["failed"] or not all(report["p_invariant"].values())
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
