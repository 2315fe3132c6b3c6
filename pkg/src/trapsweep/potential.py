"""Harmonic trap with a movable Gaussian well, and the sweep schedule.

Everything in this package is expressed in trap oscillator units: time is
measured in 1/omega, length in sqrt(hbar/(m*omega)) and energy in
hbar*omega, where omega is the harmonic trap frequency and m the atomic
mass.  In these units the trap alone reads x^2/2 and its level spacing
is exactly 1.

The full potential is

    V(x) = x^2/2 + u0 * arctan(x0) * exp(-(x - x0)^2 / (2 sigma^2))

with u0 > 0 and x0 < 0 this adds a local well of depth |u0 * arctan(x0)|
centred at x0.  The arctan factor ties the well depth to its position:
as the well is dragged towards the trap centre (x0 -> 0) it becomes
shallower and vanishes identically at x0 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class PotentialParams:
    """Swept-well parameters: amplitude ``u0``, width ``sigma``, centre ``x0``."""

    u0: float
    sigma: float
    x0: float

    def __post_init__(self):
        for name in ("u0", "sigma", "x0"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidInputError(f"{name} must be finite, got {value!r}")
        if self.sigma <= 0:
            raise InvalidInputError(f"sigma must be positive, got {self.sigma}")

    @property
    def well_amplitude(self) -> float:
        """Signed prefactor of the Gaussian term, u0 * arctan(x0)."""
        return self.u0 * math.atan(self.x0)


@dataclass(frozen=True)
class SweepSchedule:
    """Linear drag of the well centre from ``x0_start`` to ``x0_end``.

    ``velocity`` is the (positive) speed |dx0/dt|; the sweep lasts
    ``duration`` = |x0_end - x0_start| / velocity and the centre then stays
    parked at ``x0_end``.
    """

    x0_start: float
    x0_end: float
    velocity: float

    def __post_init__(self):
        for name in ("x0_start", "x0_end", "velocity"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidInputError(f"{name} must be finite, got {value!r}")
        if self.velocity <= 0:
            raise InvalidInputError(f"velocity must be positive, got {self.velocity}")

    @property
    def duration(self) -> float:
        return abs(self.x0_end - self.x0_start) / self.velocity


def evaluate(params: PotentialParams, x):
    """Potential energy at position(s) ``x``.

    Accepts a scalar or an ndarray; returns the same shape.  The x0 = 0
    configuration is exactly the bare harmonic trap for every x because
    arctan(0) = 0.
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("positions must be finite")
    well = params.well_amplitude * np.exp(
        -((x - params.x0) ** 2) / (2.0 * params.sigma**2)
    )
    out = 0.5 * x**2 + well
    return out if out.ndim else float(out)


def x0_at(schedule: SweepSchedule, t: float) -> float:
    """Well centre at time ``t``; clamps to ``x0_end`` once the sweep is over."""
    if not math.isfinite(t) or t < 0:
        raise InvalidInputError(f"time must be >= 0, got {t!r}")
    span = schedule.x0_end - schedule.x0_start
    if span == 0.0:
        return schedule.x0_start
    travel = schedule.velocity * min(t, schedule.duration)
    return schedule.x0_start + math.copysign(travel, span)
