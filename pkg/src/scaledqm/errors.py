"""Exception types shared across the package."""


class ScaledQMError(Exception):
    """Base class for all package-specific errors."""


class ScenarioError(ScaledQMError, ValueError):
    """An operation was applied to an incompatible potential scenario."""


class SingularTimeError(ScaledQMError, ValueError):
    """A closed form was evaluated on its singular time set (e.g. cos(wt)=0)."""


class QuadratureError(ScaledQMError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class TruncationError(ScaledQMError, RuntimeError):
    """A spectral expansion could not capture the requested norm fraction."""

    def __init__(self, message, captured_norm=None):
        super().__init__(message)
        self.captured_norm = captured_norm


class NumericsError(ScaledQMError, RuntimeError):
    """A numerical evolution produced non-finite or inconsistent results."""


class CflWarning(UserWarning):
    """Time step is large compared with the diffusive grid scale dz^2 m / hbar."""
