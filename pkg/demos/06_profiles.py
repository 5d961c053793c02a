"""Draw-budget profiles comparing the two adaptive variants.

Runs a small benchmark in memory (both variants on the ribbon problem,
five seeds each), then prints accuracy, performance- and data-profile
tables; the same computations back the CSV outputs of the command line.
"""

from apmads import (
    SolverConfig,
    budget_to_solve,
    data_profile,
    make_run_result,
    performance_profile,
    problem_registry,
    run,
)

problem = problem_registry("moustache")
results = []
for variant, algo in (("dp", "dpmads"), ("mp", "mpmads")):
    for seed in range(5):
        budget = 1e8 if variant == "dp" else 1e10
        out = run(problem, SolverConfig(variant=variant, seed=seed, stop_draws=budget))
        results.append(make_run_result(problem, algo, seed, out.records))

tau = 1e-3
print(f"budgets to reach accuracy {1 - tau} (tau = {tau:g}):")
for res in results:
    print(f"  {res.algorithm} seed {res.seed}: {budget_to_solve(res, tau):.3e} draws")

print()
alphas, fractions = performance_profile(results, tau)
print("performance profile (fraction solved within alpha x best budget):")
print("  alpha   " + "  ".join(f"{algo:>7}" for algo in sorted(fractions)))
for i in (0, len(alphas) // 2, len(alphas) - 1):
    row = "  ".join(f"{fractions[a][i]:7.2f}" for a in sorted(fractions))
    print(f"  {alphas[i]:<7.2f} {row}")

print()
groups, dfracs = data_profile(results, tau, sigma_ref=1e-3)
print("data profile (fraction solved within k reference estimates, sigma_ref = 1e-3):")
print("  groups  " + "  ".join(f"{algo:>7}" for algo in sorted(dfracs)))
for i in (0, len(groups) // 2, len(groups) - 1):
    row = "  ".join(f"{dfracs[a][i]:7.2f}" for a in sorted(dfracs))
    print(f"  {groups[i]:<7.1f} {row}")
