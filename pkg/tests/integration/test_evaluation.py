"""Tests for the oracle-equivalence evaluation harness."""

from evaluation.evaluate_workloads import WorkloadEvaluator
from evaluation.scenarios import SCENARIOS


def test_single_scenario_is_p_invariant():
    evaluator = WorkloadEvaluator(seed=2)
    scenario = {"name": "16 modes", "n_modes": 16, "p": [1, 4, 16]}
    results = evaluator.evaluate_scenario("vlasov", scenario)
    assert [c.passed for c in results] == [True, True, True]
    assert evaluator.invariance == {"vlasov 16 modes": True}


async def test_full_scenario_table():
    evaluator = WorkloadEvaluator(max_concurrent=2)
    report = await evaluator.run_all()
    expected = sum(len(s["p"]) for scenarios in SCENARIOS.values() for s in scenarios)
    assert report["summary"]["total"] == expected
    assert report["summary"]["failed"] == 0
    assert all(report["p_invariant"].values())
