"""Oracle-equivalence scenarios: workload, problem size and physical cell counts."""

from typing import Any, Dict, List

SST_SCENARIOS: List[Dict[str, Any]] = [
    {"name": "Sod N=100, 50 steps", "n": 100, "steps": 50, "p": [1, 4, 32, 100]},
]

MTTKRP_SCENARIOS: List[Dict[str, Any]] = [
    {"name": "8x8x8 at 5%, R=4", "dims": [8, 8, 8], "density": 0.05, "rank": 4, "p": [1, 2, 4]},
]

VLASOV_SCENARIOS: List[Dict[str, Any]] = [
    {"name": "64 modes", "n_modes": 64, "p": [1, 2, 32, 64]},
]

CONVOLUTION_SCENARIOS: List[Dict[str, Any]] = [
    {"name": "n=64", "n": 64, "p": [64]},
]

SCENARIOS = {
    "sst": SST_SCENARIOS,
    "mttkrp": MTTKRP_SCENARIOS,
    "vlasov": VLASOV_SCENARIOS,
    "convolution": CONVOLUTION_SCENARIOS,
}
