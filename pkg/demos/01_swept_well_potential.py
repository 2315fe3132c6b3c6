"""A tour of the trap potential as the Gaussian well sweeps across it.

The well starts on the far edge of the harmonic trap where the condensate
cannot feel it, then slides toward the centre.  Its depth is slaved to its
position through the arctan factor, so it fades away exactly when it
reaches the middle.
"""

import numpy as np

from trapsweep import Grid, PotentialParams, SweepSchedule, evaluate, x0_at

grid = Grid()
schedule = SweepSchedule(x0_start=-5.0, x0_end=0.0, velocity=0.1)

print("well centre along the sweep (duration", schedule.duration, "time units):")
for t in np.linspace(0.0, schedule.duration, 6):
    x0 = x0_at(schedule, float(t))
    params = PotentialParams(u0=6.4, sigma=0.5, x0=x0)
    v_at_centre = evaluate(params, 0.0)
    v_at_well = evaluate(params, x0)
    print(
        f"  t = {t:5.1f}  x0 = {x0:+.2f}  depth factor = {params.well_amplitude:+.3f}"
        f"  V(x0) = {v_at_well:+.3f}  V(0) = {v_at_centre:+.2e}"
    )

print()
print("note how V(0) stays essentially zero until the well is nearly home:")
print("the condensate sits undisturbed while the trap is being reshaped around it.")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(2, 2, figsize=(8, 6), sharex=True, sharey=True)
    for ax, x0 in zip(axes.flat, (-5.0, -4.0, -2.0, -0.3)):
        params = PotentialParams(6.4, 0.5, x0)
        ax.plot(grid.x, evaluate(params, grid.x), label=f"x0 = {x0}")
        ax.plot(grid.x, 0.5 * grid.x**2, "--", color="gray", lw=1)
        ax.set_xlim(-8, 8)
        ax.set_ylim(-10, 20)
        ax.legend(loc="upper center")
    fig.supxlabel("x (oscillator lengths)")
    fig.supylabel("V(x)")
    fig.tight_layout()
    fig.savefig("demo01_potential.png", dpi=150)
    print("saved demo01_potential.png")
