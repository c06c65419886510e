"""Exception hierarchy shared across the package.

Grouped by how the command-line front end maps them to exit codes:
input problems (exit 2), estimation failures (exit 3), I/O failures
(exit 4, plain OSError).
"""


class SpinProbeError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(SpinProbeError):
    """An argument violates a precondition (non-finite value, wrong arity, ...)."""


class MalformedInputError(SpinProbeError):
    """External data cannot be interpreted (bad CSV, wrong peak count, ...)."""


class BranchFailureError(SpinProbeError):
    """Closed-form eigenenergy evaluation left a non-negligible imaginary part."""


class DegenerateChainError(SpinProbeError):
    """Parameters put the chain on a measure-zero degenerate manifold."""


class MissingPeakError(SpinProbeError):
    """Expected spectral peaks were not found in the measured data."""


class UnidentifiableError(SpinProbeError):
    """The features admit no valid parameter set (typically J1 ~ 0)."""


class InconsistentFeaturesError(SpinProbeError):
    """Measured features are mutually inconsistent beyond tolerance."""


class AmbiguousSignError(SpinProbeError):
    """Sign decision margin is below the configured noise floor."""


class ResolutionUnreachableError(SpinProbeError):
    """Adaptive acquisition hit the window cap before stabilizing."""
