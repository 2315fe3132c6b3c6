"""The interacting condensate version of the sweep (attractive g = -5).

Interactions shift and broaden the avoided crossing, so the well is made
narrower and deeper and moves at half speed.  The transfer target is no
longer the bare oscillator state but the node-carrying stationary state of
the interacting trap; we report the overlap with it both as an amplitude
and as a population, plus the bare-oscillator projection for comparison.
"""

import numpy as np

from trapsweep import paper_gpe_config, run_gpe_sweep, snapshot_nearest

result = run_gpe_sweep(paper_gpe_config())

print(f"amplitude overlap with the odd collective mode = {result.transfer_amplitude:.4f}")
print(f"squared projection (population)                = {result.p:.4f}")
print(f"projection on the bare-oscillator level 1      = {result.p_harmonic:.4f}")
print(f"residual ground-mode population                = {result.transfer.populations[0]:.5f}")
print(f"sweep duration = {result.duration:.0f} time units = {result.periods:.1f} trap periods")
print(f"wall time: {result.runtime_seconds:.1f} s")

# Half a period later the wavepacket has swung to the mirror position.
t_half, snap_half = snapshot_nearest(result.post_trajectory, np.pi)
rho_end = result.final_state.density
rho_half = snap_half.density
mirrored = np.empty_like(rho_end)
mirrored[0] = rho_end[0]
mirrored[1:] = rho_end[:0:-1]
l2 = np.sqrt(np.sum((rho_half - mirrored) ** 2) * result.final_state.grid.dx)
print(f"L2 distance between rho(t=pi) and the mirrored rho(t=0): {l2:.4f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    x = result.final_state.grid.x
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(x, rho_end, label="end of sweep")
    ax.plot(x, rho_half, "--", label=f"t = {t_half:.2f} later")
    ax.set_xlim(-4, 4)
    ax.set_xlabel("x (oscillator lengths)")
    ax.set_ylabel("|psi|^2")
    ax.legend()
    fig.tight_layout()
    fig.savefig("demo04_gpe_snapshots.png", dpi=150)
    print("saved demo04_gpe_snapshots.png")
