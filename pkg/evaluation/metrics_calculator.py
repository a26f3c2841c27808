"""
Metrics Calculator for oracle comparisons.
Measures how far simulator outputs are from their scalar references.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List

import numpy as np

# Denominator floor for all-zero references
TINY = np.finfo(np.float64).tiny


@dataclass
class OracleComparison:
    """Container for one simulator-versus-oracle comparison."""
    workload: str
    max_abs_error: float
    max_rel_error: float
    tolerance: float
    elements: int

    @property
    def passed(self) -> bool:
        return self.max_rel_error <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "workload": self.workload,
            "max_abs_error": self.max_abs_error,
            "max_rel_error": self.max_rel_error,
            "tolerance": self.tolerance,
            "elements": self.elements,
            "passed": self.passed,
        }


class MetricsCalculator:
    """
    Error metrics between simulator and oracle arrays.

    The relative error is normwise: max|sim - oracle| / max(max|oracle|, tiny).
    """

    @staticmethod
    def max_abs_error(simulated: np.ndarray, oracle: np.ndarray) -> float:
        simulated = np.asarray(simulated)
        oracle = np.asarray(oracle)
        if simulated.shape != oracle.shape:
            raise ValueError(f"shape mismatch: {simulated.shape} vs {oracle.shape}")
        if simulated.size == 0:
            return 0.0
        return float(np.max(np.abs(simulated - oracle)))

    @staticmethod
    def relative_error(simulated: np.ndarray, oracle: np.ndarray) -> float:
        """
        Normwise relative error.

        Args:
            simulated: Simulator output
            oracle: Reference output of the same shape

        Returns:
            max|sim - oracle| / max(max|oracle|, tiny); 0.0 for empty arrays
        """
        abs_err = MetricsCalculator.max_abs_error(simulated, oracle)
        oracle = np.asarray(oracle)
        if oracle.size == 0:
            return 0.0
        scale = max(float(np.max(np.abs(oracle))), TINY)
        return abs_err / scale

    @staticmethod
    def compare(
        workload: str,
        simulated: np.ndarray,
        oracle: np.ndarray,
        tolerance: float,
    ) -> OracleComparison:
        """Compare simulator output with its oracle against a tolerance."""
        return OracleComparison(
            workload=workload,
            max_abs_error=MetricsCalculator.max_abs_error(simulated, oracle),
            max_rel_error=MetricsCalculator.relative_error(simulated, oracle),
            tolerance=tolerance,
            elements=int(np.asarray(oracle).size),
        )

    @staticmethod
    def fixed_point_bound(n_accumulated: int, frac_bits: int) -> float:
        """Absolute error allowance after n_accumulated w-bit roundings."""
        return n_accumulated * 2.0 ** (-frac_bits - 1)

    @staticmethod
    def summarize(comparisons: List[OracleComparison]) -> Dict[str, Any]:
        """
        Aggregate a batch of comparisons.

        Returns:
            Counts of passed/failed and the worst relative error
        """
        if not comparisons:
            return {"total": 0, "passed": 0, "failed": 0, "worst_rel_error": 0.0}
        passed = sum(1 for c in comparisons if c.passed)
        return {
            "total": len(comparisons),
            "passed": passed,
            "failed": len(comparisons) - passed,
            "worst_rel_error": max(c.max_rel_error for c in comparisons),
        }

    @staticmethod
    def save_metrics_report(metrics: Dict[str, Any], output_path: Path) -> None:
        """
        Save metrics report to JSON file.

        Args:
            metrics: Dictionary of metrics
            output_path: Path to save report
        """
        with open(output_path, "w") as f:
            json.dump(metrics, f, indent=2, sort_keys=True)

    @staticmethod
    def format_comparison_table(comparisons: List[OracleComparison]) -> str:
        """Format comparisons as a readable table."""
        lines = [
            f"{'Workload':<24} {'max abs err':>14} {'max rel err':>14} {'tolerance':>11}  result",
            "=" * 72,
        ]
        for c in comparisons:
            lines.append(
                f"{c.workload:<24} {c.max_abs_error:>14.3e} {c.max_rel_error:>14.3e} "
                f"{c.tolerance:>11.1e}  {'PASS' if c.passed else 'FAIL'}"
            )
        return "\n".join(lines)
