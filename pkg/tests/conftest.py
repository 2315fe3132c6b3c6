"""Shared fixtures; the expensive headline runs execute once per session."""

import pytest

from trapsweep import (
    Grid,
    PotentialParams,
    SweepSchedule,
    build_hamiltonian,
    find_avoided_crossing,
    level_dynamics,
    lowest_eigenpairs,
    paper_gpe_config,
    paper_linear_config,
    run_gpe_sweep,
    run_linear_sweep,
)
from trapsweep.propagate import PropagationConfig

BARE = PotentialParams(0.0, 1.0, 0.0)


@pytest.fixture(scope="session")
def grid():
    return Grid()


@pytest.fixture(scope="session")
def harmonic_basis(grid):
    return lowest_eigenpairs(build_hamiltonian(grid, BARE), 6)


@pytest.fixture(scope="session")
def linear_result(grid):
    return run_linear_sweep(paper_linear_config(grid))


@pytest.fixture(scope="session")
def gpe_result(grid):
    return run_gpe_sweep(paper_gpe_config(grid))


@pytest.fixture(scope="session")
def crossing(grid):
    return find_avoided_crossing(grid, 6.4, 0.5, x0_range=(-5.0, -2.0))


@pytest.fixture(scope="session")
def crossing_scan(grid):
    return level_dynamics(grid, 6.4, 0.5, (-5.0, 0.0), k=2, n_scan=121)


def _velocity_run(grid, velocity):
    schedule = SweepSchedule(-5.0, 0.0, velocity)
    config = paper_linear_config(
        grid,
        propagation=PropagationConfig(schedule=schedule, dt=1e-3, g=0.0),
        post_sweep_time=0.0,
        compute_lz=False,
    )
    return run_linear_sweep(config)


@pytest.fixture(scope="session")
def p_at_v005(grid):
    return _velocity_run(grid, 0.05).p


@pytest.fixture(scope="session")
def p_at_v002(grid):
    return _velocity_run(grid, 0.02).p
