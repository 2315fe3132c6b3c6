import numpy as np
import pytest

from trapsweep import (
    DegenerateStateError,
    Grid,
    GridMismatchError,
    InvalidInputError,
    WaveFunction,
    expectation_x,
    gaussian_state,
    harmonic_eigenstate,
    normalize,
    overlap,
)


def test_grid_invariants():
    g = Grid()
    assert g.n == 1024
    assert g.dx == pytest.approx(24.0 / 1024)
    assert g.x[0] == pytest.approx(-12.0)
    assert g.x[-1] == pytest.approx(12.0 - g.dx)
    with pytest.raises(InvalidInputError):
        Grid(n=1000)  # not a power of two
    with pytest.raises(InvalidInputError):
        Grid(n=8)
    with pytest.raises(InvalidInputError):
        Grid(x_min=2.0, x_max=-2.0)


def test_wavefunction_is_immutable():
    g = Grid(n=64)
    psi = gaussian_state(g)
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 1.0


def test_normalize_gaussian_summation_oracle():
    g = Grid()
    raw = WaveFunction(g, np.exp(-0.5 * g.x**2))
    psi = normalize(raw)
    # independent plain-sum check of the norm
    norm_sq = float(np.sum(np.abs(psi.amplitudes) ** 2)) * g.dx
    assert norm_sq == pytest.approx(1.0, abs=1e-10)


def test_normalize_idempotent_and_scale_free():
    g = Grid(n=256)
    psi = gaussian_state(g)
    again = normalize(psi)
    assert np.allclose(again.amplitudes, psi.amplitudes, atol=1e-12)
    doubled = WaveFunction(g, 2.0 * psi.amplitudes)
    assert np.allclose(normalize(doubled).amplitudes, psi.amplitudes, atol=1e-12)


def test_normalize_rejects_zero():
    g = Grid(n=64)
    with pytest.raises(DegenerateStateError):
        normalize(WaveFunction(g, np.zeros(64)))


def test_norm_is_phase_invariant():
    g = Grid(n=256)
    psi = gaussian_state(g)
    rotated = WaveFunction(g, np.exp(1.23j) * psi.amplitudes)
    assert rotated.norm == pytest.approx(psi.norm, abs=1e-14)


def test_overlap_contracts():
    g = Grid()
    psi = gaussian_state(g)
    assert overlap(psi, psi) == pytest.approx(1.0, abs=1e-12)
    # phase linearity in the second slot
    rotated = WaveFunction(g, 1j * psi.amplitudes)
    assert overlap(psi, rotated) == pytest.approx(1j, abs=1e-12)
    with pytest.raises(GridMismatchError):
        overlap(psi, gaussian_state(Grid(n=512)))


def test_overlap_conjugate_symmetry():
    g = Grid(n=256)
    rng = np.random.default_rng(11)
    a = WaveFunction(g, rng.normal(size=256) + 1j * rng.normal(size=256))
    b = WaveFunction(g, rng.normal(size=256) + 1j * rng.normal(size=256))
    assert overlap(a, b) == pytest.approx(np.conj(overlap(b, a)), abs=1e-12)


def test_lowest_eigenstates_are_orthogonal():
    g = Grid()
    psi0 = harmonic_eigenstate(g, 0)
    psi1 = harmonic_eigenstate(g, 1)
    assert abs(overlap(psi0, psi1)) < 1e-8
    assert overlap(psi0, psi0) == pytest.approx(1.0, abs=1e-10)
    assert overlap(psi1, psi1) == pytest.approx(1.0, abs=1e-10)


def test_expectation_x_parity_translation_superposition():
    g = Grid()
    assert abs(expectation_x(harmonic_eigenstate(g, 0))) < 1e-8
    assert expectation_x(gaussian_state(g, center=1.0)) == pytest.approx(1.0, abs=1e-6)
    half = normalize(WaveFunction(
        g, harmonic_eigenstate(g, 0).amplitudes + harmonic_eigenstate(g, 1).amplitudes))
    # analytic cross matrix element <0|x|1> = 1/sqrt(2)
    assert expectation_x(half) == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-6)


def test_even_density_centroid_vanishes():
    g = Grid()
    psi = normalize(WaveFunction(g, np.exp(-0.25 * g.x**2) + 0.3 * np.exp(-g.x**2)))
    assert abs(expectation_x(psi)) < 1e-8


def test_harmonic_eigenstate_rejects_negative_level():
    with pytest.raises(InvalidInputError):
        harmonic_eigenstate(Grid(n=64), -1)
