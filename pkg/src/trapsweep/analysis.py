"""Transfer probabilities, ensemble statistics and post-sweep diagnostics."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import (
    GridMismatchError,
    InvalidBasisError,
    InvalidInputError,
    WeakSignalWarning,
)
from .grid import Grid, WaveFunction, harmonic_eigenstate, overlap
from .propagate import Trajectory
from .spectrum import AvoidedCrossing, EigenPair, LevelScan


@dataclass(frozen=True)
class TransferResult:
    """Populations of the analysis basis after a sweep.

    ``p`` is the population of basis level 1 (the excitation probability);
    ``leakage`` is whatever the basis fails to capture.
    """

    p: float
    populations: np.ndarray
    leakage: float


@dataclass(frozen=True)
class EnsembleStats:
    """Energy statistics of N independent particles excited with probability p.

    mean_energy = (p + 1/2) N and variance_energy = N p (1 - p), both in
    trap quanta (the zero-point N/2 is included in the mean).
    """

    n_particles: int
    mean_energy: float
    variance_energy: float


def transfer_probability(psi_final: WaveFunction, basis: list[EigenPair]) -> TransferResult:
    """Project the final state on an orthonormal basis; p = level-1 population."""
    if len(basis) < 2:
        raise InvalidBasisError("need at least two basis states")
    states = []
    for pair in basis:
        if pair.state.grid != psi_final.grid:
            raise GridMismatchError("basis and state grids differ")
        states.append(pair.state)
    gram = np.array([[overlap(a, b) for b in states] for a in states])
    deviation = np.abs(gram - np.eye(len(states))).max()
    if deviation > 1e-6:
        raise InvalidBasisError(f"basis not orthonormal (max deviation {deviation:.2e})")
    populations = np.array([abs(overlap(s, psi_final)) ** 2 for s in states])
    return TransferResult(
        p=float(populations[1]),
        populations=populations,
        leakage=float(1.0 - populations.sum()),
    )


def binomial_distribution(p: float, n_particles: int) -> np.ndarray:
    """Exact binomial mass function over k = 0..N, computed in log space."""
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError(f"p must lie in [0, 1], got {p}")
    if n_particles < 1:
        raise InvalidInputError(f"N must be >= 1, got {n_particles}")
    k = np.arange(n_particles + 1)
    if p == 0.0 or p == 1.0:
        pmf = np.zeros(n_particles + 1)
        pmf[-1 if p == 1.0 else 0] = 1.0
        return pmf
    log_choose = gammaln(n_particles + 1) - gammaln(k + 1) - gammaln(n_particles - k + 1)
    log_pmf = log_choose + k * math.log(p) + (n_particles - k) * math.log1p(-p)
    return np.exp(log_pmf)


def ensemble_stats(p: float, n_particles: int) -> EnsembleStats:
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError(f"p must lie in [0, 1], got {p}")
    if n_particles < 1:
        raise InvalidInputError(f"N must be >= 1, got {n_particles}")
    return EnsembleStats(
        n_particles=n_particles,
        mean_energy=(p + 0.5) * n_particles,
        variance_energy=n_particles * p * (1.0 - p),
    )


def reduced_density(p: float, t: float, grid: Grid) -> np.ndarray:
    """Single-particle density of the beating two-level superposition.

    (1-p) psi0^2 + p psi1^2 + 2 sqrt(p(1-p)) cos(t) psi0 psi1 with the
    oscillator eigenstates; the cross term beats at the trap frequency
    (unity in these units).
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError(f"p must lie in [0, 1], got {p}")
    psi0 = harmonic_eigenstate(grid, 0).amplitudes.real
    psi1 = harmonic_eigenstate(grid, 1).amplitudes.real
    cross = 2.0 * math.sqrt(p * (1.0 - p)) * math.cos(t)
    return (1.0 - p) * psi0**2 + p * psi1**2 + cross * psi0 * psi1


def lz_estimate(gap: float, slope_diff: float, velocity: float) -> float:
    """Two-level diabatic passage probability exp(-2 pi (gap/2)^2 / (v s))."""
    if gap <= 0 or slope_diff <= 0 or velocity <= 0:
        raise InvalidInputError("gap, slope_diff and velocity must all be positive")
    return math.exp(-2.0 * math.pi * (0.5 * gap) ** 2 / (velocity * slope_diff))


def crossing_slope(
    scan: LevelScan,
    crossing: AvoidedCrossing,
    sigma: float,
    level_lo: int = 0,
    level_hi: int = 1,
) -> float:
    """Diabatic slope difference |d(E_hi - E_lo)/dx0| near the crossing.

    Fits the gap linearly on both sides over windows of width 5 sigma,
    excluding the hyperbolic core (width set self-consistently from a first
    fit), and averages the two magnitudes.
    """
    gaps = scan.energies[:, level_hi] - scan.energies[:, level_lo]
    x0s = scan.x0_values
    spacing = abs(x0s[1] - x0s[0])
    slopes = []
    for side in (-1.0, 1.0):

        def fit(inner: float) -> float | None:
            lo = crossing.x0_star + side * inner
            hi = crossing.x0_star + side * (inner + 5.0 * sigma)
            mask = (x0s >= min(lo, hi)) & (x0s <= max(lo, hi))
            if mask.sum() < 3:
                return None
            return abs(np.polyfit(x0s[mask], gaps[mask], 1)[0])

        rough = fit(2.0 * spacing)
        if rough is None or rough == 0.0:
            continue
        core = max(5.0 * crossing.gap / rough, 2.0 * spacing)
        refined = fit(core)
        if refined is not None:
            slopes.append(refined)
    if not slopes:
        raise InvalidInputError("scan too sparse around the crossing to fit slopes")
    return float(np.mean(slopes))


def beat_period(trajectory: Trajectory) -> float:
    """Oscillation period of <x>(t) from zero crossings.

    Needs at least two trap periods of recorded history.  Returns NaN with
    a :class:`WeakSignalWarning` when the oscillation amplitude is too small
    to locate crossings reliably (below 1e-3).
    """
    times = trajectory.times
    xs = trajectory.x_mean
    if times[-1] - times[0] < 4.0 * math.pi - 1e-9:
        raise InvalidInputError("need at least two trap periods of recorded evolution")
    amplitude = 0.5 * (xs.max() - xs.min())
    if amplitude <= 1e-3:
        warnings.warn(
            f"<x> amplitude {amplitude:.2e} too small for a period estimate",
            WeakSignalWarning,
            stacklevel=2,
        )
        return math.nan
    if amplitude < 1e-2:
        warnings.warn(
            f"<x> amplitude {amplitude:.2e} is weak; period estimate may be noisy",
            WeakSignalWarning,
            stacklevel=2,
        )
    sign_change = np.nonzero(np.sign(xs[:-1]) * np.sign(xs[1:]) < 0)[0]
    if len(sign_change) < 3:
        warnings.warn("too few zero crossings for a period estimate", WeakSignalWarning,
                      stacklevel=2)
        return math.nan
    crossings = []
    for j in sign_change:
        frac = xs[j] / (xs[j] - xs[j + 1])
        crossings.append(times[j] + frac * (times[j + 1] - times[j]))
    crossings = np.array(crossings)
    # Full period between same-direction crossings; immune to a small DC
    # offset in <x>.
    return float(np.mean(crossings[2:] - crossings[:-2]))


def instantaneous_populations(
    trajectory: Trajectory,
    u0: float,
    sigma: float,
    n_levels: int = 2,
) -> np.ndarray:
    """Populations of the instantaneous eigenstates at every recorded time.

    Solves the eigenproblem at each distinct recorded well position (cached,
    so static stretches cost one solve).
    """
    from .spectrum import build_hamiltonian, lowest_eigenpairs
    from .potential import PotentialParams

    cache: dict[float, list[EigenPair]] = {}
    out = np.empty((len(trajectory.times), n_levels))
    for i, x0 in enumerate(trajectory.x0_values):
        key = round(float(x0), 12)
        if key not in cache:
            h = build_hamiltonian(trajectory.grid, PotentialParams(u0, sigma, key))
            cache[key] = lowest_eigenpairs(h, n_levels)
        basis = cache[key]
        snap = trajectory.snapshots[i]
        out[i] = [abs(overlap(pair.state, snap)) ** 2 for pair in basis]
    return out
