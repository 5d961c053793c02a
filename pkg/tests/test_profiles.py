"""Profile computations on hand-built logs with known answers."""

import math

import pytest

from apmads import (
    DegenerateNormalizationError,
    IterationStatus,
    RunResult,
    SolverConfig,
    accuracy,
    accuracy_curve,
    budget_to_solve,
    data_profile,
    make_run_result,
    performance_profile,
    problem_registry,
    run,
    validate_records,
)
from apmads.profiles import (
    accuracy_csv,
    convergence_csv,
    data_profile_csv,
    performance_profile_csv,
)
from apmads.solver import IterationRecord


def record(k, draws, inc, delta_p=1.0):
    """Log row with consistent plumbing fields."""
    return IterationRecord(
        k=k,
        draws=draws,
        incumbent=inc,
        f_inc=0.0,
        sig_inc=1.0,
        delta_p=delta_p,
        delta_m=min(delta_p, delta_p**2),
        r=0.0,
        p=0.5,
        status=IterationStatus.FAILURE,
        cache_size=k,
    )


def synthetic_result(algorithm, seed, pairs, problem="synth"):
    """Run result with direct control of the (draws, truth) trace.

    Truth decreases from 0 at the start toward -10 at the optimum; the
    incumbent coordinate IS the truth value.
    """
    records = [record(k, draws, (truth,)) for k, (draws, truth) in enumerate(pairs, 1)]
    return RunResult(
        algorithm=algorithm,
        problem=problem,
        seed=seed,
        records=records,
        truth_trace=[truth for _, truth in pairs],
        start_truth=0.0,
        best_truth=-10.0,
    )


def test_accuracy_endpoints():
    res = synthetic_result("a", 0, [(10.0, 0.0), (100.0, -10.0)])
    assert accuracy(res, 10.0) == 0.0  # still at the start value
    assert accuracy(res, 100.0) == 1.0  # at the optimum
    assert accuracy(res, 5.0) == 0.0  # before any logged budget


def test_accuracy_step_semantics():
    res = synthetic_result("a", 0, [(10.0, -1.0), (100.0, -5.0), (1000.0, -9.0)])
    assert accuracy(res, 10.0) == pytest.approx(0.1)
    assert accuracy(res, 99.0) == pytest.approx(0.1)
    assert accuracy(res, 100.0) == pytest.approx(0.5)
    assert accuracy(res, 1e9) == pytest.approx(0.9)


def test_accuracy_best_so_far_monotone_despite_regression():
    res = synthetic_result("a", 0, [(10.0, -5.0), (100.0, -2.0), (1000.0, -4.0)])
    _, facc = accuracy_curve(res)
    assert list(facc) == [0.5, 0.5, 0.5]
    assert all(b >= a for a, b in zip(facc, facc[1:]))


def test_accuracy_degenerate_normalisation():
    res = synthetic_result("a", 0, [(10.0, 0.0)])
    res.best_truth = 0.0
    with pytest.raises(DegenerateNormalizationError):
        accuracy(res, 10.0)


def test_budget_to_solve():
    res = synthetic_result("a", 0, [(10.0, -1.0), (100.0, -5.0), (1000.0, -9.99)])
    assert budget_to_solve(res, tau=0.5) == 100.0
    assert budget_to_solve(res, tau=1e-3) == 1000.0
    assert budget_to_solve(res, tau=1e-4) == math.inf


def test_budget_to_solve_immediate():
    res = synthetic_result("a", 0, [(10.0, -10.0)])
    assert budget_to_solve(res, tau=0.5) == 10.0


def test_performance_profile_two_algorithms():
    fast = synthetic_result("fast", 0, [(100.0, -10.0)])
    slow = synthetic_result("slow", 0, [(200.0, -10.0)])
    alphas, fractions = performance_profile([fast, slow], tau=0.5)
    assert list(alphas) == [1.0, 2.0]
    assert list(fractions["fast"]) == [1.0, 1.0]
    assert list(fractions["slow"]) == [0.0, 1.0]


def test_performance_profile_never_solving_algorithm():
    good = synthetic_result("good", 0, [(100.0, -10.0)])
    bad = synthetic_result("bad", 0, [(100.0, -0.1)])
    alphas, fractions = performance_profile([good, bad], tau=0.5)
    assert all(f == 0.0 for f in fractions["bad"])
    assert all(f == 1.0 for f in fractions["good"])


def test_performance_profile_multiple_instances():
    results = [
        synthetic_result("a", 0, [(100.0, -10.0)]),
        synthetic_result("a", 1, [(300.0, -10.0)]),
        synthetic_result("b", 0, [(200.0, -10.0)]),
        synthetic_result("b", 1, [(150.0, -10.0)]),
    ]
    alphas, fractions = performance_profile(results, tau=0.5)
    assert list(alphas) == [1.0, 2.0]
    assert list(fractions["a"]) == [0.5, 1.0]
    assert list(fractions["b"]) == [0.5, 1.0]


def test_performance_profile_monotone_bounded_terminal():
    results = [
        synthetic_result("a", 0, [(100.0, -10.0)]),
        synthetic_result("a", 1, [(900.0, -0.1)]),  # never solves this instance
        synthetic_result("b", 0, [(300.0, -10.0)]),
        synthetic_result("b", 1, [(200.0, -10.0)]),
    ]
    alphas, fractions = performance_profile(results, tau=0.5)
    for algo, values in fractions.items():
        assert all(0.0 <= v <= 1.0 for v in values)
        assert all(b >= a for a, b in zip(values, values[1:]))
    # the terminal value is each algorithm's plain solve fraction
    assert fractions["a"][-1] == 0.5
    assert fractions["b"][-1] == 1.0


def test_data_profile_reference_scaling():
    res = synthetic_result("a", 0, [(3e6, -10.0)])
    groups, fractions = data_profile([res], tau=0.5, sigma_ref=1e-3)
    assert list(groups) == [3.0]
    assert list(fractions["a"]) == [1.0]


def test_data_profile_zero_budget_unsolved():
    res = synthetic_result("a", 0, [(100.0, -0.5)])
    groups, fractions = data_profile([res], tau=0.5, sigma_ref=1e-3)
    assert all(f == 0.0 for f in fractions["a"])


def test_profile_csvs_deterministic():
    results = [
        synthetic_result("a", 0, [(100.0, -10.0), (200.0, -10.0)]),
        synthetic_result("b", 0, [(150.0, -10.0)]),
    ]
    assert performance_profile_csv(results, 0.5) == performance_profile_csv(results, 0.5)
    assert data_profile_csv(results, 0.5) == data_profile_csv(results, 0.5)
    assert accuracy_csv(results) == accuracy_csv(results)
    lines = performance_profile_csv(results, 0.5).splitlines()
    assert lines[0] == "alpha,algo,fraction"
    assert data_profile_csv(results, 0.5).splitlines()[0] == "groups,algo,fraction"
    assert accuracy_csv(results).splitlines()[0] == "budget,algo,problem,seed,f_acc"


def test_convergence_csv_shape():
    res = synthetic_result("a", 0, [(10.0, -1.0), (100.0, -2.0)])
    lines = convergence_csv(res).splitlines()
    assert lines[0] == "draws,f_true_inc,f_inc,sig_inc"
    assert len(lines) == 3
    assert lines[1].split(",")[1] == "-1"


def test_make_run_result_norm2_accuracy():
    # an incumbent at a tenth of the start norm sits at accuracy 0.9
    problem = problem_registry("norm2")
    start_norm = problem.start_truth
    scale = 0.1
    inc = (problem.start[0] * scale, problem.start[1] * scale)
    records = [record(1, 50.0, problem.start), record(2, 500.0, inc)]
    res = make_run_result(problem, "dpmads", 0, records)
    assert res.truth_trace[0] == pytest.approx(start_norm, rel=1e-15)
    assert accuracy(res, 50.0) == pytest.approx(0.0, abs=1e-15)
    assert accuracy(res, 500.0) == pytest.approx(0.9, rel=1e-12)


def test_validate_records_on_real_run():
    problem = problem_registry("moustache")
    out = run(problem, SolverConfig(variant="dp", seed=1, stop_draws=1e6))
    checks = validate_records(out.records, problem=problem, variant="dp")
    assert checks
    assert all(ok for _, ok, _ in checks)


def test_validate_records_detects_corruption():
    problem = problem_registry("norm2")
    out = run(problem, SolverConfig(variant="mp", seed=1, stop_draws=1e5))
    records = list(out.records)
    broken = IterationRecord(
        k=records[-1].k + 1,
        draws=records[-1].draws - 1.0,  # draws regress
        incumbent=records[-1].incumbent,
        f_inc=0.0,
        sig_inc=1.0,
        delta_p=0.5,
        delta_m=0.3,  # violates the coupling
        r=records[-1].r - 5.0,  # monotone variant cannot decrease
        p=0.5,
        status=IterationStatus.FAILURE,
        cache_size=1,
    )
    checks = dict(
        (name, ok) for name, ok, _ in validate_records(records + [broken], variant="mp")
    )
    assert not checks["draws-nondecreasing"]
    assert not checks["mesh-frame-coupling"]
    assert not checks["r-nondecreasing"]
