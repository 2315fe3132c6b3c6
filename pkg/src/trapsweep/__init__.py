"""1D quantum dynamics of a trapped condensate excited by a swept Gaussian well.

The package simulates a harmonic trap perturbed by a movable Gaussian
well whose depth is tied to its position.  Dragging the well across the
trap takes the system through a narrow avoided crossing; a fast enough
sweep crosses it diabatically and leaves the particle (or the whole
condensate, via the cubic mean-field term) in the first excited motional
state.  Trap oscillator units are used throughout.
"""

from .analysis import (
    EnsembleStats,
    TransferResult,
    beat_period,
    binomial_distribution,
    crossing_slope,
    ensemble_stats,
    instantaneous_populations,
    lz_estimate,
    reduced_density,
    transfer_probability,
)
from .errors import (
    ConfigError,
    DegenerateStateError,
    GridMismatchError,
    InvalidBasisError,
    InvalidInputError,
    NoCrossingFoundError,
    NumericalBlowupError,
    NumericalFailureError,
    OptimizationFailureError,
    TrapSweepError,
    WeakSignalWarning,
)
from .experiments import (
    LZConsistency,
    SweepConfig,
    SweepResult,
    paper_gpe_config,
    paper_linear_config,
    reproduce_figures,
    quarter_period_snapshot,
    run_gpe_sweep,
    run_linear_sweep,
    snapshot_nearest,
    zero_crossing_snapshot,
)
from .grid import (
    Grid,
    WaveFunction,
    expectation_x,
    gaussian_state,
    harmonic_eigenstate,
    normalize,
    overlap,
)
from .optimize import OptimizationProblem, OptimizationResult, optimize
from .potential import PotentialParams, SweepSchedule, evaluate, x0_at
from .propagate import (
    PropagationConfig,
    Trajectory,
    energy_functional,
    evolve,
    evolve_static,
    imaginary_time_ground_state,
    step,
)
from .spectrum import (
    AvoidedCrossing,
    BandedHamiltonian,
    EigenPair,
    LevelScan,
    build_hamiltonian,
    find_avoided_crossing,
    level_dynamics,
    lowest_eigenpairs,
)

__version__ = "0.1.0"
