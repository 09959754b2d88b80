import math
from fractions import Fraction

import pytest

import gbcsp
from gbcsp import analytics, harness, oracle


def test_params_validation():
    p = gbcsp.Params(10, 3, 2, 10, 2)
    assert (p.n, p.d, p.k, p.t, p.q) == (10, 3, 2, 10, 2)
    assert p.p == pytest.approx(2 / 9)
    assert p.strict
    with pytest.raises(gbcsp.GbcspError, match="arity"):
        gbcsp.Params(2, 3, 3, 1, 1)


def test_generate_solve_matches_brute_force():
    params = gbcsp.Params(6, 3, 2, 8, 2)
    inst = gbcsp.sample_instance(params, seed=5, trial=1)
    assert inst == gbcsp.sample_instance(params, seed=5, trial=1)
    assert gbcsp.Instance.from_text(inst.to_text()) == inst
    stats = gbcsp.solve_all(inst, collect=True)
    report = oracle.brute_force(inst)
    assert stats.nodes == report.node_count
    assert stats.levels == report.level_counts
    assert [list(s) for s in stats.solutions] == [list(s) for s in report.solutions]
    for solution in stats.solutions:
        assert inst.is_consistent(solution)


def test_hand_built_instance():
    params = gbcsp.Params(3, 2, 2, 1, 1)
    inst = gbcsp.Instance(params, [([0, 1], [[1, 1]])])
    stats = gbcsp.solve_all(inst, collect=True)
    assert stats.solution_count == 6
    assert stats.levels == [1, 2, 3, 6]
    assert stats.nodes == 1 + 2 * (1 + 2 + 3)


def test_exact_expectation_and_prediction():
    params = gbcsp.Params(10, 3, 2, 10, 2)
    exact = oracle.exact_expected_nodes(params)
    assert isinstance(exact, Fraction)
    assert analytics.log_exact_expected_nodes(params) == pytest.approx(math.log(exact), rel=1e-13)
    assert analytics.g_exact(0, params) == 1
    pred = analytics.predict(params)
    assert pred.regime == analytics.Regime.Subcritical
    assert pred.r0 == pytest.approx(1.92257150516919, rel=1e-12)
    assert pred.r_cr == pytest.approx(4.37146524448703, rel=1e-12)


def test_rate_function_maximizer():
    ap = analytics.AnalyticParams(2.0, 3, 1 / 8, 2 * analytics.r_zero(2.0, 3, 1 / 8))
    assert analytics.classify(ap) == analytics.Regime.Supercritical
    z = analytics.zeta(ap)
    assert 0 < z < 1
    assert abs(analytics.f_prime(z, ap)) < 1e-10
    assert analytics.big_F(ap) == pytest.approx(analytics.f(z, ap), abs=1e-12)


def test_uc_heuristic():
    params = gbcsp.Params(40, 2, 3, 40, 1)
    inst = gbcsp.sample_instance(params, seed=1)
    outcome = gbcsp.run_uc(inst, seed=2)
    if outcome.tag == gbcsp.UCTag.SolutionFound:
        assert inst.is_consistent(outcome.assignment)
    assert 0.0 <= gbcsp.uc_success_rate(params, 20, 3) <= 1.0


def test_sweep_is_reproducible():
    config = {"n": 6, "d": 2, "k": 2, "q": 1, "t_grid": [0, 3, 6], "trials": 40, "seed": 9,
              "measure": "nodes,sat,uc"}
    rows, errors = harness.run_sweep(config)
    assert errors == []
    assert rows[0]["mean_nodes"] == 127
    assert rows[0]["stderr_nodes"] == 0
    first = harness.sweep_csv(config)
    assert first == harness.sweep_csv(dict(config, threads=2))
    assert first.splitlines()[0] == harness.CSV_HEADER


def test_verification_suite():
    results = oracle.run_verification(3, instances=30, samples=20000)
    assert all(passed for _, passed, _ in results), results
