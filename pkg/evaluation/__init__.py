"""Oracle-equivalence evaluation framework."""

from .metrics_calculator import MetricsCalculator, OracleComparison

__all__ = ["MetricsCalculator", "OracleComparison"]
