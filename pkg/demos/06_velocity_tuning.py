"""Tuning the sweep speed for maximal transfer.

Too slow and the crossing is followed adiabatically (no excitation); the
faster the sweep, the more diabatic the passage.  A short derivative-free
search over the velocity finds the sweet spot within a small evaluation
budget.  Searches run on a coarse fast profile; the winner is confirmed at
full resolution.
"""

from trapsweep import OptimizationProblem, optimize

problem = OptimizationProblem(
    bounds={"velocity": (0.02, 0.8)},
    fixed={"u0": 6.4, "sigma": 0.5, "g": 0.0},
    budget=12,
    seed=7,
)
result = optimize(problem)

print("evaluation log (fast profile):")
for idx, u0, sigma, velocity, p in result.log:
    print(f"  #{idx:02d}  v = {velocity:.4f}  p = {p:.5f}")
print()
print(f"best velocity = {result.best_params['velocity']:.4f}")
print(f"fast-profile p = {result.best_p:.5f}, confirmed at full resolution = "
      f"{result.confirmed_p:.5f}")
