"""Exception and warning types shared across the package."""


class TrapSweepError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(TrapSweepError, ValueError):
    """Arguments outside a function's documented domain."""


class GridMismatchError(TrapSweepError, ValueError):
    """Two wavefunctions living on different meshes were combined."""


class DegenerateStateError(TrapSweepError, ValueError):
    """A zero (or numerically zero) state where a normalizable one is required."""


class InvalidBasisError(TrapSweepError, ValueError):
    """Projection basis failed the orthonormality check."""


class NumericalFailureError(TrapSweepError, RuntimeError):
    """An iterative or direct numerical method did not converge."""


class NumericalBlowupError(NumericalFailureError):
    """Non-finite amplitudes appeared during time propagation."""


class NoCrossingFoundError(TrapSweepError, RuntimeError):
    """The requested parameter range does not bracket a gap minimum."""


class OptimizationFailureError(TrapSweepError, RuntimeError):
    """Every objective evaluation failed; carries the evaluation log."""

    def __init__(self, message, log=None):
        super().__init__(message)
        self.log = log if log is not None else []


class ConfigError(TrapSweepError, ValueError):
    """Malformed or unknown entries in a run configuration file."""


class WeakSignalWarning(UserWarning):
    """Observable amplitude too small for a reliable estimate."""
