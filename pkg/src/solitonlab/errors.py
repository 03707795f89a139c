"""Exception types shared across the package.

Numerical failure modes are hard errors: positivity loss and quadrature
drift are never clamped or silently repaired, since every identity
downstream depends on them.
"""


class SolitonLabError(Exception):
    """Base class for all package errors."""


class NonKahler(SolitonLabError):
    """Metric density lost positivity at one or more nodes."""

    def __init__(self, min_density: float, message: str = ""):
        self.min_density = float(min_density)
        super().__init__(
            message or f"metric density not positive (min = {min_density:.6e})"
        )


class QuadratureDrift(SolitonLabError):
    """A volume normalization missed its tolerance."""


class BackendMismatch(SolitonLabError):
    """Field does not belong to the state's backend (wrong kind or shape)."""


class NonInvariantInput(SolitonLabError):
    """Sphere backend received a field that is not a profile in the moment variable."""


class RankUnsupported(SolitonLabError):
    """weighted_divergence received an input rank it does not handle."""


class EigensolveFailure(SolitonLabError):
    """Dense eigensolve did not converge; carries conditioning data."""

    def __init__(self, message: str, condition_estimate: float = float("nan")):
        self.condition_estimate = condition_estimate
        super().__init__(message)


class StepCollapse(SolitonLabError):
    """Flow step size fell below the configured floor."""


class PositivityLoss(SolitonLabError):
    """A rejected flow step could not be salvaged by halving."""


class NotCritical(SolitonLabError):
    """Operation requires a critical state (gradient norm below threshold)."""


class WrongSign(SolitonLabError):
    """Operation requires a positive-curvature backend (lambda > 0)."""


class ConfigError(SolitonLabError):
    """Configuration file or override could not be parsed."""
