"""Uniform 1D mesh, wavefunction container and basic observables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateStateError, GridMismatchError, InvalidInputError

#: Default simulation box; wide enough that every state of interest decays
#: to machine-negligible amplitude well before the edges.
DEFAULT_X_MIN = -12.0
DEFAULT_X_MAX = 12.0
DEFAULT_N = 1024


@dataclass(frozen=True)
class Grid:
    """Uniform mesh x_j = x_min + j*dx, j = 0..n-1, with dx = (x_max-x_min)/n.

    The right endpoint is excluded, which makes the mesh directly usable as
    a periodic FFT grid.  ``n`` must be a power of two (>= 16) so spectral
    transforms stay fast and exact.
    """

    x_min: float = DEFAULT_X_MIN
    x_max: float = DEFAULT_X_MAX
    n: int = DEFAULT_N
    _x: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 16 or (self.n & (self.n - 1)) != 0:
            raise InvalidInputError(f"n must be a power of two >= 16, got {self.n}")
        if not (self.x_max > self.x_min):
            raise InvalidInputError("x_max must exceed x_min")
        x = self.x_min + self.dx * np.arange(self.n)
        x.setflags(write=False)
        object.__setattr__(self, "_x", x)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n

    @property
    def x(self) -> np.ndarray:
        return self._x

    def wavenumbers(self) -> np.ndarray:
        """FFT-ordered wavenumbers for the periodic box."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dx)


def default_grid() -> Grid:
    return Grid()


@dataclass(frozen=True)
class WaveFunction:
    """Complex amplitudes sampled on a :class:`Grid`.

    The array is copied and frozen at construction; every operation returns
    a new instance, so values can be shared freely between threads.
    """

    grid: Grid
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128, copy=True)
        if amps.shape != (self.grid.n,):
            raise InvalidInputError(
                f"amplitudes must have shape ({self.grid.n},), got {amps.shape}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        """sqrt(sum |psi_j|^2 dx)."""
        return math.sqrt(float(np.sum(np.abs(self.amplitudes) ** 2)) * self.grid.dx)

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def normalize(psi: WaveFunction) -> WaveFunction:
    """Rescale to unit norm; direction and phase are untouched."""
    nrm = psi.norm
    if nrm < 1e-300:
        raise DegenerateStateError("cannot normalize a zero wavefunction")
    return WaveFunction(psi.grid, psi.amplitudes / nrm)


def overlap(a: WaveFunction, b: WaveFunction) -> complex:
    """Inner product <a|b> = sum conj(a_j) b_j dx."""
    if a.grid != b.grid:
        raise GridMismatchError("wavefunctions live on different grids")
    return complex(np.vdot(a.amplitudes, b.amplitudes) * a.grid.dx)


def expectation_x(psi: WaveFunction) -> float:
    """Position expectation value of a normalized state."""
    return float(np.sum(psi.grid.x * psi.density) * psi.grid.dx)


def gaussian_state(grid: Grid, center: float = 0.0) -> WaveFunction:
    """Unit-width normalized Gaussian exp(-(x-center)^2/2)."""
    amps = np.exp(-0.5 * (grid.x - center) ** 2).astype(np.complex128)
    return normalize(WaveFunction(grid, amps))


def harmonic_eigenstate(grid: Grid, level: int) -> WaveFunction:
    """Analytic oscillator eigenstate (real, textbook sign convention).

    psi_n(x) = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi)), built with the
    physicists' Hermite recurrence.  Accurate for the low levels used here.
    """
    if level < 0:
        raise InvalidInputError(f"level must be >= 0, got {level}")
    x = grid.x
    h_prev = np.ones_like(x)
    h = 2.0 * x if level >= 1 else h_prev
    for k in range(1, level):
        h, h_prev = 2.0 * x * h - 2.0 * k * h_prev, h
    norm_const = 1.0 / math.sqrt(2.0**level * math.factorial(level) * math.sqrt(math.pi))
    amps = (norm_const * h * np.exp(-0.5 * x**2)).astype(np.complex128)
    return WaveFunction(grid, amps)
