"""Render the four standard figures from simulation data files.

Each renderer takes the directory that `trapsweep figures` populated,
reads only what it needs, and writes a vector image (SVG).  Rendering is
read-only over the data and deterministic, so regenerating an image from
unchanged data reproduces it byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "trapfigs"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .datafiles import FigureDataError, density_from_wavefunction_file, read_columns

#: Auto-scaled axes keep this fractional margin around the data.
MARGIN = 0.05


@dataclass(frozen=True)
class FigureSpec:
    """What one figure is built from and where it goes."""

    inputs: tuple[Path, ...]
    output: Path
    panels: tuple[int, int] = (1, 1)
    xlabel: str = "x"
    ylabel: str = ""
    annotations: dict = field(default_factory=dict)

    def check_inputs(self):
        for path in self.inputs:
            if not path.exists():
                raise FigureDataError(f"required data file is missing: {path}")


def _save(fig, output: Path) -> Path:
    output.parent.mkdir(parents=True, exist_ok=True)
    # Dropping the date stamp keeps rerenders byte-identical.
    fig.savefig(output, format="svg", metadata={"Date": None})
    plt.close(fig)
    return output


def _fig1_inputs(data_dir: Path) -> tuple[list[Path], Path]:
    curves = sorted(data_dir.glob("fig1_x0_*.dat"))
    reference = data_dir / "fig1_harmonic.dat"
    if len(curves) != 4:
        found = ", ".join(p.name for p in curves) or "none"
        raise FigureDataError(
            f"fig1 needs exactly four fig1_x0_*.dat curves in {data_dir}, found: {found}"
        )
    if not reference.exists():
        raise FigureDataError(f"required data file is missing: {reference}")
    return curves, reference


def render_fig1(data_dir, output=None) -> Path:
    """Four-panel potential snapshots, swept well solid vs bare trap dashed."""
    data_dir = Path(data_dir)
    curves, reference = _fig1_inputs(data_dir)
    spec = FigureSpec(
        inputs=tuple(curves) + (reference,),
        output=Path(output) if output else data_dir / "fig1.svg",
        panels=(2, 2),
        ylabel="V(x)",
    )
    spec.check_inputs()
    _, ref = read_columns(reference)

    fig, axes = plt.subplots(*spec.panels, figsize=(8, 6), sharex=True, sharey=True)
    for ax, path, tag in zip(axes.flat, curves, "abcd"):
        meta, data = read_columns(path)
        ax.plot(data[:, 0], data[:, 1], "-", color="C0")
        ax.plot(ref[:, 0], ref[:, 1], "--", color="0.4", lw=1)
        ax.margins(MARGIN)
        ax.set_title(f"({tag})  x0 = {meta.get('x0', '?')}", fontsize=10)
    for ax in axes[-1]:
        ax.set_xlabel(spec.xlabel)
    for ax in axes[:, 0]:
        ax.set_ylabel(spec.ylabel)
    fig.tight_layout()
    return _save(fig, spec.output)


def render_fig2(data_dir, output=None) -> Path:
    """Level energies against the well position."""
    data_dir = Path(data_dir)
    source = data_dir / "fig2_levels.dat"
    spec = FigureSpec(
        inputs=(source,),
        output=Path(output) if output else data_dir / "fig2.svg",
        xlabel="well position x0",
        ylabel="energy",
    )
    spec.check_inputs()
    _, data = read_columns(source)

    fig, ax = plt.subplots(figsize=(7, 5))
    for i in range(1, data.shape[1]):
        ax.plot(data[:, 0], data[:, i], lw=1.2)
    ax.margins(MARGIN)
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    fig.tight_layout()
    return _save(fig, spec.output)


def overlay_l2(data_dir) -> float | None:
    """L2 distance between the quarter-period analytic density and the
    propagated one; None when no propagated file is present."""
    data_dir = Path(data_dir)
    propagated = data_dir / "fig3_propagated.dat"
    if not propagated.exists():
        return None
    _, analytic = read_columns(data_dir / "fig3_analytic_t0.50pi.dat")
    _, measured = read_columns(propagated)
    if analytic.shape[0] != measured.shape[0]:
        raise FigureDataError("fig3 analytic and propagated grids differ")
    dx = float(np.mean(np.diff(analytic[:, 0])))
    return float(np.sqrt(np.sum((analytic[:, 1] - measured[:, 1]) ** 2) * dx))


def render_fig3(data_dir, output=None) -> Path:
    """Beating density at quarter and half period, with the propagated
    profile overlaid (and the L2 difference annotated) when available."""
    data_dir = Path(data_dir)
    quarter = data_dir / "fig3_analytic_t0.50pi.dat"
    half = data_dir / "fig3_analytic_t1.00pi.dat"
    spec = FigureSpec(
        inputs=(quarter, half),
        output=Path(output) if output else data_dir / "fig3.svg",
        ylabel="density",
    )
    spec.check_inputs()

    fig, ax = plt.subplots(figsize=(7, 5))
    _, data_q = read_columns(quarter)
    ax.plot(data_q[:, 0], data_q[:, 1], "-", color="C0", label="quarter period")
    _, data_h = read_columns(half)
    ax.plot(data_h[:, 0], data_h[:, 1], "--", color="C1", label="half period")

    l2 = overlay_l2(data_dir)
    if l2 is not None:
        _, data_p = read_columns(data_dir / "fig3_propagated.dat")
        ax.plot(data_p[:, 0], data_p[:, 1], ":", color="C2", lw=2,
                label="propagated")
        ax.annotate(f"L2(analytic, propagated) = {l2:.4f}",
                    xy=(0.02, 0.95), xycoords="axes fraction", fontsize=9)
    ax.margins(MARGIN)
    ax.set_xlim(-5, 5)
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.legend()
    fig.tight_layout()
    return _save(fig, spec.output)


def render_fig4(data_dir, output=None) -> Path:
    """Interacting-sweep wavepacket at the sweep end and half a period later."""
    data_dir = Path(data_dir)
    end = data_dir / "fig4_sweep_end.dat"
    later = data_dir / "fig4_half_period.dat"
    spec = FigureSpec(
        inputs=(end, later),
        output=Path(output) if output else data_dir / "fig4.svg",
        ylabel="density",
    )
    spec.check_inputs()

    fig, ax = plt.subplots(figsize=(7, 5))
    _, x, rho = density_from_wavefunction_file(end)
    ax.plot(x, rho, "-", color="C0", label="end of sweep")
    meta, x2, rho2 = density_from_wavefunction_file(later)
    t_later = float(meta.get("t_after_sweep", 0.0))
    ax.plot(x2, rho2, "--", color="C1", label=f"t = {t_later:.2f} later")
    ax.margins(MARGIN)
    ax.set_xlim(-5, 5)
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.legend()
    fig.tight_layout()
    return _save(fig, spec.output)


RENDERERS = {
    "fig1": render_fig1,
    "fig2": render_fig2,
    "fig3": render_fig3,
    "fig4": render_fig4,
}


def render_all(data_dir, out_dir=None) -> list[Path]:
    data_dir = Path(data_dir)
    out_dir = Path(out_dir) if out_dir else data_dir
    return [render(data_dir, out_dir / f"{name}.svg")
            for name, render in RENDERERS.items()]
