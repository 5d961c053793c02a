"""Draw-budget post-processing of finished runs.

The accuracy of a run at budget N is the normalised best-so-far progress
of the incumbent's true objective value:

    f_acc = (truth(start) - best truth so far) / (truth(start) - truth(optimum))

so f_acc is 0 at the start point, 1 at the optimum, and nondecreasing in
the budget. Performance and data profiles then report, per algorithm, the
fraction of (problem, seed) instances solved to tolerance tau within a
budget ratio or a reference-estimate count. All computations are pure
functions of the logs.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegenerateNormalizationError,
    InvalidInputError,
    InvalidSigmaError,
)
from .mesh import IterationStatus, mesh_size, on_mesh
from .problems import ProblemDef
from .solver import IterationRecord

_FMT = ".17g"


@dataclass
class RunResult:
    """A finished run annotated with the true values of its incumbents."""

    algorithm: str
    problem: str
    seed: int
    records: list[IterationRecord]
    truth_trace: list[float]
    start_truth: float
    best_truth: float


def make_run_result(
    problem: ProblemDef, algorithm: str, seed: int, records: list[IterationRecord]
) -> RunResult:
    """Annotate a run log with the problem's truth oracle."""
    trace = [problem.truth(rec.incumbent) for rec in records]
    return RunResult(
        algorithm=algorithm,
        problem=problem.name,
        seed=seed,
        records=records,
        truth_trace=trace,
        start_truth=problem.start_truth,
        best_truth=problem.best_truth,
    )


def accuracy_curve(result: RunResult) -> tuple[np.ndarray, np.ndarray]:
    """(budgets, best-so-far accuracy) aligned with the run log."""
    denom = result.start_truth - result.best_truth
    if denom == 0.0:
        raise DegenerateNormalizationError(
            f"start and optimum share the value {result.best_truth}"
        )
    if not result.records:
        return np.empty(0), np.empty(0)
    budgets = np.array([rec.draws for rec in result.records])
    best = np.minimum.accumulate(np.asarray(result.truth_trace, dtype=float))
    return budgets, (result.start_truth - best) / denom


def accuracy(result: RunResult, budget: float) -> float:
    """Accuracy of the best incumbent logged within ``budget`` draws."""
    if budget < 0:
        raise InvalidInputError(f"budget must be >= 0, got {budget}")
    budgets, facc = accuracy_curve(result)
    i = int(np.searchsorted(budgets, budget, side="right")) - 1
    return float(facc[i]) if i >= 0 else 0.0


def budget_to_solve(result: RunResult, tau: float) -> float:
    """Smallest logged budget reaching accuracy 1 - tau; +inf if never."""
    if not 0.0 < tau < 1.0:
        raise InvalidInputError(f"tau must lie in (0, 1), got {tau}")
    budgets, facc = accuracy_curve(result)
    hits = np.flatnonzero(facc >= 1.0 - tau)
    return float(budgets[hits[0]]) if hits.size else math.inf


def _instances(results) -> list[tuple[str, int]]:
    return sorted({(res.problem, res.seed) for res in results})


def _algorithms(results) -> list[str]:
    return sorted({res.algorithm for res in results})


def _solve_budgets(results, tau: float, log_budget: bool = False):
    """Per-(algorithm, instance) solve budgets; missing runs count as +inf."""
    budgets = {}
    for res in results:
        key = (res.algorithm, (res.problem, res.seed))
        if key in budgets:
            raise InvalidInputError(f"duplicate run for {key}")
        value = budget_to_solve(res, tau)
        if log_budget and math.isfinite(value):
            value = math.log10(value)
        budgets[key] = value
    return budgets


def performance_profile(results, tau: float, log_budget: bool = False):
    """Solved fraction per algorithm versus budget ratio to the per-instance best.

    Returns (alphas, {algorithm: fractions}) where both arrays share the
    breakpoint grid (ratios at which some fraction changes, starting at 1).
    Instances solved by no algorithm stay in the denominator.
    """
    algos = _algorithms(results)
    instances = _instances(results)
    if not instances:
        raise InvalidInputError("no runs given")
    budgets = _solve_budgets(results, tau, log_budget)
    ratios = {}
    for inst in instances:
        best = min(budgets.get((a, inst), math.inf) for a in algos)
        for a in algos:
            n = budgets.get((a, inst), math.inf)
            ratios[(a, inst)] = n / best if math.isfinite(n) and best > 0 else math.inf
    finite = sorted({r for r in ratios.values() if math.isfinite(r)})
    alphas = np.array([1.0] + [r for r in finite if r > 1.0])
    fractions = {}
    for a in algos:
        own = np.array([ratios[(a, inst)] for inst in instances])
        fractions[a] = np.array(
            [np.count_nonzero(own <= alpha) / len(instances) for alpha in alphas]
        )
    return alphas, fractions


def data_profile(results, tau: float, sigma_ref: float = 1e-3, log_budget: bool = False):
    """Solved fraction per algorithm versus groups of reference estimates.

    The abscissa counts how many observations at guaranteed standard
    deviation ``sigma_ref`` (each worth 1/sigma_ref**2 draws) would fit in
    the consumed budget.
    """
    if not sigma_ref > 0:
        raise InvalidSigmaError(f"sigma_ref must be positive, got {sigma_ref}")
    algos = _algorithms(results)
    instances = _instances(results)
    if not instances:
        raise InvalidInputError("no runs given")
    n_ref = 1.0 / (sigma_ref * sigma_ref)
    budgets = _solve_budgets(results, tau, log_budget)
    groups_of = {
        key: value / n_ref if math.isfinite(value) else math.inf
        for key, value in budgets.items()
    }
    finite = sorted({g for g in groups_of.values() if math.isfinite(g)})
    groups = np.array(finite if finite else [0.0])
    fractions = {}
    for a in algos:
        own = np.array([groups_of.get((a, inst), math.inf) for inst in instances])
        fractions[a] = np.array(
            [np.count_nonzero(own <= g) / len(instances) for g in groups]
        )
    return groups, fractions


# --- CSV renderings -----------------------------------------------------------


def performance_profile_csv(results, tau: float, log_budget: bool = False) -> str:
    alphas, fractions = performance_profile(results, tau, log_budget)
    lines = ["alpha,algo,fraction"]
    for i, alpha in enumerate(alphas):
        for algo in sorted(fractions):
            lines.append(
                f"{format(alpha, _FMT)},{algo},{format(fractions[algo][i], _FMT)}"
            )
    return "\n".join(lines) + "\n"


def data_profile_csv(
    results, tau: float, sigma_ref: float = 1e-3, log_budget: bool = False
) -> str:
    groups, fractions = data_profile(results, tau, sigma_ref, log_budget)
    lines = ["groups,algo,fraction"]
    for i, g in enumerate(groups):
        for algo in sorted(fractions):
            lines.append(f"{format(g, _FMT)},{algo},{format(fractions[algo][i], _FMT)}")
    return "\n".join(lines) + "\n"


def accuracy_csv(results) -> str:
    lines = ["budget,algo,problem,seed,f_acc"]
    for res in sorted(results, key=lambda r: (r.algorithm, r.problem, r.seed)):
        budgets, facc = accuracy_curve(res)
        for b, f in zip(budgets, facc):
            lines.append(
                f"{format(b, _FMT)},{res.algorithm},{res.problem},{res.seed},"
                f"{format(f, _FMT)}"
            )
    return "\n".join(lines) + "\n"


def convergence_csv(result: RunResult) -> str:
    """Truth-versus-draws curve of one run (plus the estimates for context)."""
    lines = ["draws,f_true_inc,f_inc,sig_inc"]
    for rec, truth in zip(result.records, result.truth_trace):
        lines.append(
            f"{format(rec.draws, _FMT)},{format(truth, _FMT)},"
            f"{format(rec.f_inc, _FMT)},{format(rec.sig_inc, _FMT)}"
        )
    return "\n".join(lines) + "\n"


# --- log validation -----------------------------------------------------------


def validate_records(
    records: list[IterationRecord],
    problem: ProblemDef | None = None,
    variant: str | None = None,
) -> list[tuple[str, bool, str]]:
    """Structural invariant checks on a parsed run log.

    Returns (check name, passed, detail) triples. Mesh membership of the
    logged incumbents (exact rational residuals against the finest mesh so
    far) is checked when the problem, and hence the start point, is known.
    """
    checks: list[tuple[str, bool, str]] = []

    ks = [rec.k for rec in records]
    checks.append(("iteration-counter", ks == list(range(1, len(records) + 1)), ""))

    draws = [rec.draws for rec in records]
    ok = all(b >= a for a, b in zip(draws, draws[1:])) and all(d >= 0 for d in draws)
    checks.append(("draws-nondecreasing", ok, ""))

    ok = all(rec.delta_m == mesh_size(rec.delta_p) for rec in records)
    checks.append(("mesh-frame-coupling", ok, "delta_m == min(delta_p, delta_p^2)"))

    ok = all(0.0 <= rec.p <= 1.0 for rec in records)
    checks.append(("p-in-unit-interval", ok, ""))

    sizes = [rec.cache_size for rec in records]
    ok = all(b >= a for a, b in zip(sizes, sizes[1:]))
    checks.append(("cache-size-nondecreasing", ok, ""))

    ok = all(
        rec.p >= 0.5 if rec.status is IterationStatus.SUCCESS else True
        for rec in records
    ) and all(
        rec.p <= 0.5 if rec.status is IterationStatus.FAILURE else True
        for rec in records
    )
    checks.append(("status-p-consistency", ok, "success implies p >= 0.5"))

    if variant == "mp":
        rs = [rec.r for rec in records]
        ok = all(b >= a for a, b in zip(rs, rs[1:]))
        checks.append(("r-nondecreasing", ok, "monotone variant"))

    if problem is not None and records:
        delta_min = math.inf
        ok = True
        detail = ""
        for rec in records:
            delta_min = min(delta_min, rec.delta_m)
            if not on_mesh(rec.incumbent, problem.start, delta_min):
                ok = False
                detail = f"incumbent off mesh at k={rec.k}"
                break
        checks.append(("incumbents-on-mesh", ok, detail))

    return checks
