"""Optimal solutions of vanishing perturbations converge to the optimal face.

Runs a schedule of shrinking perturbations V_j -> U (same direction, halved
magnitude each step) and prints the distance from each perturbed optimal
point to the optimal face of the reference problem, including a degenerate
instance whose optimal face is a whole edge.
"""

from robust_stability.geometry import Polytope
from robust_stability.harness import ExperimentConfig, run_convergence_suite
from robust_stability.model import RobustProblem

# optimal face is the edge {1} x [0, 1]: every x2 in [0, 1] is optimal
sets = {
    "lo0": Polytope([[1.0, 0.0, 1.0]]),
    "hi0": Polytope([[-1.0, 0.0, -2.0]]),
    "lo1": Polytope([[0.0, 1.0, 0.0]]),
    "hi1": Polytope([[0.0, -1.0, -1.0]]),
}
rp = RobustProblem(constraint_sets=sets, cost=[1.0, 0.0])

config = ExperimentConfig(seed=2, trials=12, magnitude_schedule=(1e-2,))
records = run_convergence_suite(rp, config)

print(f"{'step':>4} {'d_nat':>12} {'nu(V_j)':>12} {'dist to F_opt(U)':>18}")
for r in records:
    print(f"{r.step:4d} {r.d_nat:12.3e} {r.nu:12.6f} {r.dist_to_fopt:18.3e}")

first, last = records[0].dist_to_fopt, records[-1].dist_to_fopt
print(f"\nreduction factor: {last / max(first, 1e-300):.2e}")
