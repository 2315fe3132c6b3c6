"""From one particle to a condensate: counting statistics of the transfer.

Each of the N non-interacting atoms is promoted independently with
probability p, so the number of excited atoms is binomial and the final
energy has mean (p + 1/2) N and variance N p (1 - p).  The per-particle
density keeps beating at the trap frequency with contrast set by p.
"""

import numpy as np

from trapsweep import Grid, binomial_distribution, ensemble_stats, reduced_density

p, n_atoms = 0.97, 1000

stats = ensemble_stats(p, n_atoms)
pmf = binomial_distribution(p, n_atoms)
k = np.arange(n_atoms + 1)

print(f"N = {n_atoms} atoms, single-particle transfer p = {p}")
print(f"mean energy     = {stats.mean_energy:.1f} trap quanta "
      f"(zero-point {n_atoms / 2:.0f} + excitation {p * n_atoms:.0f})")
print(f"energy variance = {stats.variance_energy:.1f}")
print(f"pmf sanity: sum = {pmf.sum():.12f}, "
      f"mean k = {float(k @ pmf):.2f}, var k = {float((k - k @ pmf) ** 2 @ pmf):.2f}")

most_likely = int(np.argmax(pmf))
print(f"most likely outcome: {most_likely} of {n_atoms} atoms excited "
      f"(P = {pmf[most_likely]:.4f})")

# The beating single-particle density: maximal sideways slosh at t = 0,
# symmetric profile a quarter period later.
grid = Grid()
for t, label in ((0.0, "t = 0"), (np.pi / 2, "t = pi/2"), (np.pi, "t = pi")):
    dens = reduced_density(p, t, grid)
    mean_x = float(np.sum(grid.x * dens) * grid.dx)
    print(f"{label:9s} integral = {float(np.sum(dens) * grid.dx):.6f}  <x> = {mean_x:+.4f}")
