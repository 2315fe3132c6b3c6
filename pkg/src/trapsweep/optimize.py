"""Derivative-free tuning of sweep parameters for maximal transfer.

Evaluations are full sweep simulations, so the search runs on a coarser
fast profile (smaller grid, larger step) and only the best candidate is
re-run at full resolution for the reported number.  Latin-hypercube
seeding covers the box, then Nelder-Mead simplexes refine, restarting
from the incumbent until the evaluation budget runs out or restarts stop
paying.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import InvalidInputError, OptimizationFailureError
from .experiments import SweepConfig, run_gpe_sweep, run_linear_sweep
from .grid import Grid
from .potential import SweepSchedule
from .propagate import PropagationConfig

_TUNABLE = ("u0", "sigma", "velocity")


@dataclass(frozen=True)
class OptimizationProblem:
    """Box-bounded search over a subset of (u0, sigma, velocity).

    ``bounds`` maps parameter name to (lower, upper); equal bounds pin the
    parameter.  ``fixed`` supplies every parameter not being searched plus
    the sweep context (x0_start, x0_end, g).  The objective is the transfer
    probability p of the corresponding sweep.
    """

    bounds: dict
    fixed: dict = field(default_factory=dict)
    budget: int = 30
    seed: int = 0
    fast_n: int = 512
    fast_dt: float = 2e-3
    full_n: int = 1024
    full_dt: float = 1e-3

    def __post_init__(self):
        if not self.bounds:
            raise InvalidInputError("at least one parameter must be free")
        for name, (lo, hi) in self.bounds.items():
            if name not in _TUNABLE:
                raise InvalidInputError(f"unknown tunable parameter {name!r}")
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                raise InvalidInputError(f"bad bounds for {name}: ({lo}, {hi})")
        fast_dx = 24.0 / self.fast_n
        sigma_lo = self.bounds.get("sigma", (self.fixed.get("sigma", 0.5),) * 2)[0]
        if sigma_lo <= 2.0 * fast_dx:
            raise InvalidInputError(
                f"sigma lower bound {sigma_lo} not resolvable (needs > {2 * fast_dx:.4f})"
            )
        if self.budget < len(self.bounds) + 1:
            raise InvalidInputError("budget must exceed the number of free parameters")


@dataclass
class OptimizationResult:
    best_params: dict
    best_p: float
    confirmed_p: float
    log: list  # (eval_index, u0, sigma, velocity, p)


def _sweep_p(params: dict, n: int, dt: float) -> float:
    schedule = SweepSchedule(params.get("x0_start", -5.0), params.get("x0_end", 0.0),
                             params["velocity"])
    g = params.get("g", 0.0)
    prop = PropagationConfig(schedule=schedule, dt=dt, g=g)
    config = SweepConfig(
        grid=Grid(n=n), u0=params["u0"], sigma=params["sigma"], propagation=prop,
        post_sweep_time=0.0, compute_lz=False,
    )
    run = run_gpe_sweep if g != 0.0 else run_linear_sweep
    return run(config).p


def _latin_hypercube(rng, bounds_arr, count):
    dim = bounds_arr.shape[0]
    samples = np.empty((count, dim))
    for d in range(dim):
        strata = (np.arange(count) + rng.random(count)) / count
        rng.shuffle(strata)
        lo, hi = bounds_arr[d]
        samples[:, d] = lo + strata * (hi - lo)
    return samples


def optimize(problem: OptimizationProblem) -> OptimizationResult:
    """Maximize the transfer probability within the box; deterministic per seed."""
    names = sorted(problem.bounds)
    bounds_arr = np.array([problem.bounds[name] for name in names])
    free = [i for i, name in enumerate(names) if bounds_arr[i, 0] < bounds_arr[i, 1]]
    rng = np.random.default_rng(problem.seed)

    log = []
    evals_left = [problem.budget]

    def full_params(vector: np.ndarray) -> dict:
        params = dict(problem.fixed)
        for i, name in enumerate(names):
            params[name] = float(vector[i])
        params.setdefault("u0", 6.4)
        params.setdefault("sigma", 0.5)
        params.setdefault("velocity", 0.1)
        return params

    def evaluate(vector: np.ndarray) -> float:
        vector = np.clip(vector, bounds_arr[:, 0], bounds_arr[:, 1])
        if evals_left[0] <= 0:
            raise _BudgetExhausted
        evals_left[0] -= 1
        params = full_params(vector)
        try:
            p = _sweep_p(params, problem.fast_n, problem.fast_dt)
        except Exception:
            p = math.nan
        log.append((len(log), params["u0"], params["sigma"], params["velocity"],
                    p if not math.isnan(p) else float("nan")))
        return p

    n_init = min(max(2 * len(free) + 2, 4), max(problem.budget // 3, 1))
    candidates = _latin_hypercube(rng, bounds_arr, n_init)
    best_vec = None
    best_p = -math.inf
    try:
        for vec in candidates:
            p = evaluate(vec)
            if not math.isnan(p) and p > best_p:
                best_p, best_vec = p, np.array(vec)

        # Simplex refinement with restarts from the incumbent.
        while free and best_vec is not None and evals_left[0] > len(free) + 1:
            restart_from = best_p

            def negative_p(reduced: np.ndarray) -> float:
                vector = np.array(best_vec)
                vector[free] = reduced
                p = evaluate(vector)
                return -p if not math.isnan(p) else math.inf

            try:
                res = minimize(
                    negative_p,
                    best_vec[free],
                    method="Nelder-Mead",
                    bounds=[tuple(bounds_arr[i]) for i in free],
                    options={
                        "maxfev": evals_left[0],
                        "fatol": 1e-4,
                        "xatol": 1e-3,
                        "initial_simplex": _initial_simplex(rng, best_vec[free],
                                                            bounds_arr[free]),
                    },
                )
                if -res.fun > best_p:
                    best_p = -res.fun
                    best_vec[free] = np.clip(res.x, bounds_arr[free, 0], bounds_arr[free, 1])
            except _BudgetExhausted:
                break
            if best_p - restart_from < 1e-4:
                break
    except _BudgetExhausted:
        pass

    if best_vec is None:
        raise OptimizationFailureError("every sweep evaluation failed", log)

    params = full_params(best_vec)
    confirmed = _sweep_p(params, problem.full_n, problem.full_dt)
    best_named = {name: float(best_vec[i]) for i, name in enumerate(names)}
    return OptimizationResult(best_named, float(best_p), float(confirmed), log)


def _initial_simplex(rng, x0, bounds):
    dim = len(x0)
    span = bounds[:, 1] - bounds[:, 0]
    simplex = np.tile(x0, (dim + 1, 1))
    for d in range(dim):
        step = 0.1 * span[d]
        vertex = x0[d] + step if x0[d] + step <= bounds[d, 1] else x0[d] - step
        simplex[d + 1, d] = vertex
    return simplex


class _BudgetExhausted(Exception):
    pass
