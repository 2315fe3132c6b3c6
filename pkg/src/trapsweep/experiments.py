"""End-to-end sweep scenarios and figure-data generation."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import datafiles
from .analysis import (
    TransferResult,
    beat_period,
    crossing_slope,
    instantaneous_populations,
    lz_estimate,
    reduced_density,
    transfer_probability,
)
from .errors import InvalidInputError, NoCrossingFoundError
from .grid import Grid, WaveFunction, harmonic_eigenstate, overlap
from .potential import PotentialParams, SweepSchedule, evaluate
from .propagate import (
    PropagationConfig,
    Trajectory,
    energy_functional,
    evolve,
    evolve_static,
    imaginary_time_ground_state,
)
from .spectrum import (
    EigenPair,
    build_hamiltonian,
    find_avoided_crossing,
    level_dynamics,
    lowest_eigenpairs,
)

GPE_TARGET_ODD = "gpe-odd"
GPE_TARGET_HARMONIC = "harmonic"

#: Potential parameters of the well-less harmonic trap used for state
#: preparation (u0 = 0 makes sigma and x0 inert).
BARE_TRAP = PotentialParams(0.0, 1.0, 0.0)


@dataclass(frozen=True)
class SweepConfig:
    """Everything needed to reproduce one sweep experiment."""

    grid: Grid
    u0: float
    sigma: float
    propagation: PropagationConfig
    basis_size: int = 6
    gpe_target_mode: str = GPE_TARGET_ODD
    post_sweep_time: float = 4.0 * math.pi
    compute_lz: bool = True
    output_dir: Path | None = None
    config_text: str = ""

    def __post_init__(self):
        if self.basis_size < 2:
            raise InvalidInputError("basis_size must be >= 2")
        if self.gpe_target_mode not in (GPE_TARGET_ODD, GPE_TARGET_HARMONIC):
            raise InvalidInputError(f"unknown gpe_target_mode {self.gpe_target_mode!r}")
        if self.post_sweep_time < 0:
            raise InvalidInputError("post_sweep_time must be >= 0")


@dataclass(frozen=True)
class LZConsistency:
    """Two-level estimate next to the measured transfer probability."""

    p_lz: float
    p_measured: float
    gap: float
    slope_diff: float
    x0_star: float


@dataclass
class SweepResult:
    """Measured outcome of one sweep plus enough context to rerun it."""

    config: SweepConfig
    transfer: TransferResult
    p: float
    transfer_amplitude: float
    p_harmonic: float | None
    lz: LZConsistency | None
    beat: float | None
    duration: float
    periods: float
    runtime_seconds: float
    timings: dict
    final_state: WaveFunction = field(repr=False)
    trajectory: Trajectory = field(repr=False)
    post_trajectory: Trajectory | None = field(repr=False, default=None)
    written_files: list[Path] = field(default_factory=list)

    def summary_dict(self) -> dict:
        out = {
            "p": self.p,
            "populations": [float(v) for v in self.transfer.populations],
            "leakage": self.transfer.leakage,
            "transfer_amplitude": self.transfer_amplitude,
            "p_harmonic": self.p_harmonic,
            "beat_period": self.beat,
            "sweep_duration": self.duration,
            "sweep_periods": self.periods,
            "runtime_seconds": self.runtime_seconds,
            "timings": self.timings,
            "parameters": {
                "u0": self.config.u0,
                "sigma": self.config.sigma,
                "x0_start": self.config.propagation.schedule.x0_start,
                "x0_end": self.config.propagation.schedule.x0_end,
                "velocity": self.config.propagation.schedule.velocity,
                "g": self.config.propagation.g,
                "dt": self.config.propagation.dt,
                "method": self.config.propagation.method,
                "n": self.config.grid.n,
                "basis_size": self.config.basis_size,
                "gpe_target_mode": self.config.gpe_target_mode,
            },
            "config_echo": self.config.config_text,
        }
        if self.lz is not None:
            out["lz_consistency"] = {
                "p_lz": self.lz.p_lz,
                "p_measured": self.lz.p_measured,
                "gap": self.lz.gap,
                "slope_diff": self.lz.slope_diff,
                "x0_star": self.lz.x0_star,
            }
        return out


def paper_linear_config(grid: Grid | None = None, **overrides) -> SweepConfig:
    """The headline non-interacting sweep: u0=6.4, sigma=0.5, v=0.1, g=0."""
    schedule = SweepSchedule(-5.0, 0.0, 0.1)
    propagation = PropagationConfig(schedule=schedule, dt=1e-3, g=0.0)
    defaults = dict(grid=grid or Grid(), u0=6.4, sigma=0.5, propagation=propagation)
    defaults.update(overrides)
    return SweepConfig(**defaults)


def paper_gpe_config(grid: Grid | None = None, **overrides) -> SweepConfig:
    """The headline interacting sweep: u0=10, sigma=0.3, v=0.05, g=-5."""
    schedule = SweepSchedule(-5.0, 0.0, 0.05)
    propagation = PropagationConfig(schedule=schedule, dt=1e-3, g=-5.0)
    defaults = dict(grid=grid or Grid(), u0=10.0, sigma=0.3, propagation=propagation,
                    compute_lz=False)
    defaults.update(overrides)
    return SweepConfig(**defaults)


def _final_params(config: SweepConfig) -> PotentialParams:
    return PotentialParams(config.u0, config.sigma, config.propagation.schedule.x0_end)


def _lz_consistency(config: SweepConfig, p_measured: float) -> LZConsistency | None:
    schedule = config.propagation.schedule
    lo = min(schedule.x0_start, schedule.x0_end)
    hi = max(schedule.x0_start, schedule.x0_end)
    try:
        crossing = find_avoided_crossing(config.grid, config.u0, config.sigma,
                                         x0_range=(lo, hi))
    except NoCrossingFoundError:
        return None
    scan = level_dynamics(config.grid, config.u0, config.sigma, (lo, hi), k=2, n_scan=121)
    slope = crossing_slope(scan, crossing, config.sigma)
    p_lz = lz_estimate(crossing.gap, slope, schedule.velocity)
    return LZConsistency(p_lz, p_measured, crossing.gap, slope, crossing.x0_star)


def _post_evolution(config: SweepConfig, state: WaveFunction, duration: float) -> Trajectory:
    # Fine recording stride so zero crossings of <x> are well resolved.
    stride = max(1, min(config.propagation.record_every,
                        int(round(0.05 / config.propagation.dt))))
    return evolve_static(
        state, _final_params(config), config.propagation.g, config.propagation.dt,
        duration, record_every=stride, method=config.propagation.method,
    )


def snapshot_nearest(trajectory: Trajectory, t: float) -> tuple[float, WaveFunction]:
    """Recorded snapshot closest in time to ``t``."""
    idx = int(np.argmin(np.abs(trajectory.times - t)))
    return float(trajectory.times[idx]), trajectory.snapshots[idx]


def zero_crossing_snapshot(trajectory: Trajectory) -> tuple[float, WaveFunction]:
    """Snapshot closest to the first zero crossing of <x>(t)."""
    xs = trajectory.x_mean
    change = np.nonzero(np.sign(xs[:-1]) * np.sign(xs[1:]) < 0)[0]
    if len(change) == 0:
        raise InvalidInputError("no zero crossing of <x> in the recorded window")
    j = int(change[0])
    idx = j if abs(xs[j]) <= abs(xs[j + 1]) else j + 1
    return float(trajectory.times[idx]), trajectory.snapshots[idx]


def quarter_period_snapshot(trajectory: Trajectory) -> tuple[float, WaveFunction]:
    """Snapshot at the most mirror-symmetric moment of the first beat period.

    The quarter-period frame of the beating wavepacket is where its density
    is momentarily symmetric.  Minimizing the mirror asymmetry (rather than
    |<x>|, which only probes the lowest beat component) suppresses every
    odd-profile coherence at once, including those carried by the small
    leakage into higher levels.
    """
    dx = trajectory.grid.dx
    t_end = trajectory.times[0] + 2.0 * math.pi + 1e-9
    best_idx = 0
    best_asym = math.inf
    for i, t in enumerate(trajectory.times):
        if t > t_end:
            break
        rho = trajectory.snapshots[i].density
        mirrored = np.empty_like(rho)
        mirrored[0] = rho[0]
        mirrored[1:] = rho[:0:-1]
        asym = math.sqrt(float(np.sum((rho - mirrored) ** 2)) * dx)
        if asym < best_asym:
            best_asym = asym
            best_idx = i
    return float(trajectory.times[best_idx]), trajectory.snapshots[best_idx]


def run_linear_sweep(config: SweepConfig) -> SweepResult:
    """Prepare the trap ground state, sweep, project on the final-trap basis."""
    if config.propagation.g != 0.0:
        raise InvalidInputError("linear sweep requires g = 0; use run_gpe_sweep")
    t_start = time.perf_counter()
    timings = {}

    tic = time.perf_counter()
    psi0 = imaginary_time_ground_state(config.grid, BARE_TRAP, g=0.0)
    timings["prepare"] = time.perf_counter() - tic

    tic = time.perf_counter()
    trajectory = evolve(psi0, config.propagation, config.u0, config.sigma)
    timings["evolve"] = time.perf_counter() - tic

    tic = time.perf_counter()
    basis = lowest_eigenpairs_of_final(config)
    final_state = trajectory.final_state
    transfer = transfer_probability(final_state, basis)
    amplitude = abs(overlap(basis[1].state, final_state))
    timings["analyze"] = time.perf_counter() - tic

    lz = None
    if config.compute_lz:
        tic = time.perf_counter()
        lz = _lz_consistency(config, transfer.p)
        timings["lz"] = time.perf_counter() - tic

    post = None
    beat = None
    if config.post_sweep_time > 0:
        tic = time.perf_counter()
        post = _post_evolution(config, final_state, config.post_sweep_time)
        if post.times[-1] - post.times[0] >= 4.0 * math.pi - 1e-9:
            beat = beat_period(post)
        timings["post"] = time.perf_counter() - tic

    duration = config.propagation.schedule.duration
    result = SweepResult(
        config=config,
        transfer=transfer,
        p=transfer.p,
        transfer_amplitude=amplitude,
        p_harmonic=None,
        lz=lz,
        beat=beat,
        duration=duration,
        periods=duration / (2.0 * math.pi),
        runtime_seconds=time.perf_counter() - t_start,
        timings=timings,
        final_state=final_state,
        trajectory=trajectory,
        post_trajectory=post,
    )
    if config.output_dir is not None:
        result.written_files = write_sweep_artifacts(result, config.output_dir)
    return result


def lowest_eigenpairs_of_final(config: SweepConfig) -> list[EigenPair]:
    h = build_hamiltonian(config.grid, _final_params(config))
    return lowest_eigenpairs(h, config.basis_size)


def run_gpe_sweep(config: SweepConfig) -> SweepResult:
    """Interacting sweep: relax the interacting ground state, sweep, project.

    The transfer is quantified against the node-carrying (odd-parity)
    stationary state of the interacting trap; the projection on the bare
    oscillator's first excited state is reported alongside for comparison.
    """
    g = config.propagation.g
    t_start = time.perf_counter()
    timings = {}

    tic = time.perf_counter()
    psi0 = imaginary_time_ground_state(config.grid, BARE_TRAP, g=g)
    timings["prepare"] = time.perf_counter() - tic

    tic = time.perf_counter()
    trajectory = evolve(psi0, config.propagation, config.u0, config.sigma)
    timings["evolve"] = time.perf_counter() - tic

    tic = time.perf_counter()
    final_state = trajectory.final_state
    if config.gpe_target_mode == GPE_TARGET_ODD:
        target = imaginary_time_ground_state(config.grid, BARE_TRAP, g=g, parity="odd")
        ground = psi0
        basis = [
            EigenPair(energy_functional(ground, BARE_TRAP, g), ground),
            EigenPair(energy_functional(target, BARE_TRAP, g), target),
        ]
    else:
        basis = lowest_eigenpairs_of_final(config)
    transfer = transfer_probability(final_state, basis)
    amplitude = abs(overlap(basis[1].state, final_state))
    psi1 = harmonic_eigenstate(config.grid, 1)
    p_harmonic = abs(overlap(psi1, final_state)) ** 2
    timings["analyze"] = time.perf_counter() - tic

    post = None
    beat = None
    post_time = max(math.pi, config.post_sweep_time) if config.post_sweep_time > 0 else math.pi
    tic = time.perf_counter()
    post = _post_evolution(config, final_state, post_time)
    if post.times[-1] - post.times[0] >= 4.0 * math.pi - 1e-9:
        beat = beat_period(post)
    timings["post"] = time.perf_counter() - tic

    duration = config.propagation.schedule.duration
    result = SweepResult(
        config=config,
        transfer=transfer,
        p=transfer.p,
        transfer_amplitude=amplitude,
        p_harmonic=p_harmonic,
        lz=None,
        beat=beat,
        duration=duration,
        periods=duration / (2.0 * math.pi),
        runtime_seconds=time.perf_counter() - t_start,
        timings=timings,
        final_state=final_state,
        trajectory=trajectory,
        post_trajectory=post,
    )
    if config.output_dir is not None:
        result.written_files = write_sweep_artifacts(result, config.output_dir)
    return result


def write_sweep_artifacts(result: SweepResult, out_dir) -> list[Path]:
    """Emit trajectory observables, final state and the JSON run summary."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    config = result.config
    written = []

    run_meta = {
        "u0": config.u0, "sigma": config.sigma,
        "velocity": config.propagation.schedule.velocity,
        "g": config.propagation.g, "dt": config.propagation.dt,
    }
    populations = instantaneous_populations(result.trajectory, config.u0, config.sigma)
    written.append(datafiles.write_trajectory(
        out_dir / "trajectory.dat", result.trajectory, populations, run_meta))
    if result.post_trajectory is not None:
        post_pops = instantaneous_populations(result.post_trajectory, config.u0, config.sigma)
        written.append(datafiles.write_trajectory(
            out_dir / "post_trajectory.dat", result.post_trajectory, post_pops,
            dict(run_meta, phase="post-sweep")))
    written.append(datafiles.write_wavefunction(
        out_dir / "final_state.dat", result.final_state, dict(run_meta, t=result.duration)))

    summary_path = out_dir / "summary.json"
    summary_path.write_text(json.dumps(result.summary_dict(), indent=2) + "\n")
    written.append(summary_path)
    return written


def reproduce_figures(
    output_dir,
    grid: Grid | None = None,
    linear_config: SweepConfig | None = None,
    gpe_config: SweepConfig | None = None,
    fig1_positions: tuple[float, ...] = (-5.0, -4.0, -2.0, -0.3),
    fig3_p: float = 0.97,
    linear_result: SweepResult | None = None,
    gpe_result: SweepResult | None = None,
) -> list[Path]:
    """Generate the columnar data behind the four standard figures.

    fig1: potential profiles at several well positions plus the bare trap;
    fig2: level dynamics scan; fig3: analytic beating density at quarter and
    half period plus the propagated post-sweep density; fig4: interacting
    sweep snapshots at the end and half a period later.
    """
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    grid = grid or Grid()
    linear_config = linear_config or paper_linear_config(grid)
    gpe_config = gpe_config or paper_gpe_config(grid)
    written = []

    # fig1: swept-well potential profiles
    for x0 in fig1_positions:
        params = PotentialParams(linear_config.u0, linear_config.sigma, x0)
        written.append(datafiles.write_columns(
            out / f"fig1_x0_{x0:+.1f}.dat",
            [grid.x, evaluate(params, grid.x)],
            ["x", "V"],
            {"u0": linear_config.u0, "sigma": linear_config.sigma, "x0": x0},
        ))
    written.append(datafiles.write_columns(
        out / "fig1_harmonic.dat", [grid.x, 0.5 * grid.x**2], ["x", "V"],
        {"label": "bare trap"}))

    # fig2: level dynamics
    scan = level_dynamics(grid, linear_config.u0, linear_config.sigma, (-5.0, 0.0),
                          k=6, n_scan=201)
    written.append(datafiles.write_level_scan(out / "fig2_levels.dat", scan))

    # fig3: analytic beating density at quarter and half period
    for label, t in (("0.50pi", 0.5 * math.pi), ("1.00pi", math.pi)):
        dens = reduced_density(fig3_p, t, grid)
        written.append(datafiles.write_density(
            out / f"fig3_analytic_t{label}.dat", grid, dens, {"p": fig3_p, "t": t}))

    # fig3: propagated density at the quarter-period beat phase, where the
    # analytic profile is symmetric.
    linear = linear_result if linear_result is not None else run_linear_sweep(linear_config)
    t_snap, snap = quarter_period_snapshot(linear.post_trajectory)
    written.append(datafiles.write_density(
        out / "fig3_propagated.dat", grid, snap.density,
        {"p_measured": linear.p, "t_after_sweep": t_snap}))

    # fig4: interacting sweep snapshots
    gpe = gpe_result if gpe_result is not None else run_gpe_sweep(gpe_config)
    written.append(datafiles.write_wavefunction(
        out / "fig4_sweep_end.dat", gpe.final_state,
        {"g": gpe_config.propagation.g, "t_after_sweep": 0.0}))
    t_half, snap_half = snapshot_nearest(gpe.post_trajectory, math.pi)
    written.append(datafiles.write_wavefunction(
        out / "fig4_half_period.dat", snap_half,
        {"g": gpe_config.propagation.g, "t_after_sweep": t_half}))

    summary = {
        "linear": linear.summary_dict(),
        "gpe": gpe.summary_dict(),
    }
    summary_path = out / "figures_summary.json"
    summary_path.write_text(json.dumps(summary, indent=2) + "\n")
    written.append(summary_path)
    return written
