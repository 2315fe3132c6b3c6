"""Level dynamics: watching the well state dive through the trap spectrum.

As the well moves in from the edge its bound state plunges in energy and
cuts through the nearly unperturbed trap levels, producing a chain of
avoided crossings.  The one that matters for the excitation scheme is the
narrow gap where the diving state meets the trap ground state.
"""

from trapsweep import Grid, find_avoided_crossing, level_dynamics

grid = Grid()
u0, sigma = 6.4, 0.5

scan = level_dynamics(grid, u0, sigma, x0_range=(-5.0, 0.0), k=4, n_scan=51)
print("lowest levels vs well position:")
for x0, row in zip(scan.x0_values[::10], scan.energies[::10]):
    print(f"  x0 = {x0:+.1f}   " + "  ".join(f"{e:+.4f}" for e in row))

crossing = find_avoided_crossing(grid, u0, sigma, x0_range=(-5.0, -2.0))
print()
print(f"gap minimum at x0* = {crossing.x0_star:.4f}")
print(f"gap = {crossing.gap:.5f}, local mean spacing = {crossing.mean_spacing:.4f}")
print(f"gap / spacing = {crossing.gap / crossing.mean_spacing:.3f} "
      f"-> narrow: {crossing.is_narrow()}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    dense = level_dynamics(grid, u0, sigma, (-5.0, 0.0), k=6, n_scan=201)
    fig, ax = plt.subplots(figsize=(7, 5))
    for i in range(dense.energies.shape[1]):
        ax.plot(dense.x0_values, dense.energies[:, i], lw=1.2)
    ax.axvline(crossing.x0_star, color="gray", ls=":", lw=1)
    ax.set_xlabel("well position x0")
    ax.set_ylabel("energy (trap quanta)")
    ax.set_ylim(-4, 6)
    fig.tight_layout()
    fig.savefig("demo02_levels.png", dpi=150)
    print("saved demo02_levels.png")
