import math

import numpy as np
import pytest

from trapsweep import (
    Grid,
    InvalidInputError,
    NumericalBlowupError,
    PotentialParams,
    PropagationConfig,
    SweepSchedule,
    WaveFunction,
    build_hamiltonian,
    energy_functional,
    evolve,
    evolve_static,
    gaussian_state,
    harmonic_eigenstate,
    imaginary_time_ground_state,
    lowest_eigenpairs,
    normalize,
    overlap,
    step,
)

BARE = PotentialParams(0.0, 1.0, 0.0)


def test_config_validation():
    schedule = SweepSchedule(-5.0, 0.0, 0.1)
    with pytest.raises(InvalidInputError):
        PropagationConfig(schedule=schedule, dt=0.0)
    with pytest.raises(InvalidInputError):
        PropagationConfig(schedule=schedule, method="rk4")
    with pytest.raises(InvalidInputError):
        PropagationConfig(schedule=schedule, record_every=0)


def test_ground_state_is_stationary():
    g = Grid()
    psi0 = harmonic_eigenstate(g, 0)
    traj = evolve_static(psi0, BARE, 0.0, 1e-3, 1.0, record_every=1000)
    assert abs(abs(overlap(traj.final_state, psi0)) - 1.0) < 1e-8


def test_coherent_state_oscillates_analytically():
    g = Grid()
    psi0 = gaussian_state(g, center=1.0)
    traj = evolve_static(psi0, BARE, 0.0, 1e-3, 2.0 * math.pi, record_every=100)
    assert np.allclose(traj.x_mean, np.cos(traj.times), atol=1e-4)


def test_single_step_preserves_norm():
    g = Grid()
    psi = gaussian_state(g)
    for _ in range(50):
        psi = step(psi, PotentialParams(6.4, 0.5, -3.0), 1e-3)
    assert psi.norm == pytest.approx(1.0, abs=1e-12)


def test_step_rejects_bad_dt_and_blowup():
    g = Grid(n=64)
    psi = gaussian_state(g)
    with pytest.raises(InvalidInputError):
        step(psi, BARE, 0.0)
    amps = np.array(psi.amplitudes)
    amps[3] = np.inf
    with pytest.raises(NumericalBlowupError):
        step(WaveFunction(g, amps), BARE, 1e-3)


def test_norm_conservation_long_run():
    g = Grid()
    psi0 = gaussian_state(g, center=1.0)
    traj = evolve_static(psi0, PotentialParams(6.4, 0.5, -3.5), 0.0, 1e-3, 10.0,
                         record_every=500)
    assert np.max(np.abs(traj.norms - 1.0)) < 1e-10


def test_implicit_method_is_unitary_too():
    g = Grid()
    psi0 = gaussian_state(g, center=0.5)
    traj = evolve_static(psi0, BARE, 0.0, 1e-3, 2.0, record_every=500,
                         method="implicit-finite-difference")
    assert np.max(np.abs(traj.norms - 1.0)) < 1e-8


def test_evolve_requires_resolvable_schedule():
    g = Grid(n=64)
    config = PropagationConfig(schedule=SweepSchedule(-5.0, 0.0, 0.1), dt=1.0)
    with pytest.raises(InvalidInputError):
        evolve(gaussian_state(g), config, 6.4, 0.5)


def test_sweep_without_well_does_nothing():
    g = Grid(n=512)
    config = PropagationConfig(schedule=SweepSchedule(-5.0, 0.0, 0.25), dt=5e-3)
    psi0 = imaginary_time_ground_state(g, BARE)
    traj = evolve(psi0, config, 0.0, 0.5)
    assert abs(overlap(traj.final_state, psi0)) ** 2 > 0.999


def test_time_step_convergence_of_transfer(linear_result, grid):
    from trapsweep import paper_linear_config, run_linear_sweep

    halved = paper_linear_config(
        grid,
        propagation=PropagationConfig(schedule=SweepSchedule(-5.0, 0.0, 0.1), dt=5e-4),
        post_sweep_time=0.0,
        compute_lz=False,
    )
    assert abs(run_linear_sweep(halved).p - linear_result.p) < 1e-4


def test_imaginary_time_harmonic_ground_state():
    g = Grid()
    psi = imaginary_time_ground_state(g, BARE, g=0.0)
    assert energy_functional(psi, BARE, 0.0) == pytest.approx(0.5, abs=1e-5)
    fidelity = abs(overlap(psi, harmonic_eigenstate(g, 0))) ** 2
    assert fidelity > 0.99999


def test_imaginary_time_matches_eigensolver_in_perturbed_trap():
    g = Grid()
    params = PotentialParams(6.4, 0.5, -5.0)
    relaxed = imaginary_time_ground_state(g, params, g=0.0)
    pair = lowest_eigenpairs(build_hamiltonian(g, params), 1)[0]
    assert abs(overlap(relaxed, pair.state)) ** 2 > 0.9999


def test_attractive_ground_state_regression():
    g = Grid()
    psi = imaginary_time_ground_state(g, BARE, g=-5.0)
    energy = energy_functional(psi, BARE, -5.0)
    # frozen regression value for the attractive trap ground state
    assert energy == pytest.approx(-0.980053, abs=1e-4)
    # self-focusing: sharper peak than the bare Gaussian
    assert psi.density.max() > 1.0 / math.sqrt(math.pi)
    # independent discretization: implicit relaxations agree to its accuracy
    psi_fd = imaginary_time_ground_state(g, BARE, g=-5.0,
                                         method="implicit-finite-difference")
    assert abs(energy_functional(psi_fd, BARE, -5.0) - energy) < 1e-3


def test_attractive_ground_state_is_stationary():
    g = Grid()
    psi = imaginary_time_ground_state(g, BARE, g=-5.0)
    traj = evolve_static(psi, BARE, -5.0, 2.5e-4, 10.0 * math.pi, record_every=4000)
    dev = max(np.max(np.abs(s.density - psi.density)) for s in traj.snapshots)
    assert dev < 1e-5


def test_odd_parity_relaxation_gives_first_excited():
    g = Grid()
    psi = imaginary_time_ground_state(g, BARE, g=0.0, parity="odd")
    fidelity = abs(overlap(psi, harmonic_eigenstate(g, 1))) ** 2
    assert fidelity > 0.9999
    assert energy_functional(psi, BARE, 0.0) == pytest.approx(1.5, abs=1e-4)


def test_odd_attractive_state_regression():
    g = Grid()
    psi = imaginary_time_ground_state(g, BARE, g=-5.0, parity="odd")
    assert energy_functional(psi, BARE, -5.0) == pytest.approx(0.656663, abs=1e-4)
    # odd parity means a node at the centre
    mid = np.argmin(np.abs(g.x))
    assert abs(psi.amplitudes[mid]) < 1e-8


def test_imaginary_time_validation():
    g = Grid(n=64)
    with pytest.raises(InvalidInputError):
        imaginary_time_ground_state(g, BARE, tol=0.0)
    with pytest.raises(InvalidInputError):
        imaginary_time_ground_state(g, BARE, parity="sideways")


def test_energy_functional_basics():
    g = Grid()
    assert energy_functional(harmonic_eigenstate(g, 0), BARE) == pytest.approx(0.5, abs=1e-4)
    assert energy_functional(harmonic_eigenstate(g, 1), BARE) == pytest.approx(1.5, abs=1e-4)
    attractive = imaginary_time_ground_state(g, BARE, g=-5.0)
    assert energy_functional(attractive, BARE, -5.0) < 0.5


def test_superposition_energy_is_average():
    g = Grid()
    half = normalize(WaveFunction(
        g, harmonic_eigenstate(g, 0).amplitudes + harmonic_eigenstate(g, 1).amplitudes))
    assert energy_functional(half, BARE) == pytest.approx(1.0, abs=1e-4)
