"""Exception types shared across the package."""


class BvpNodeError(Exception):
    """Base class for all package errors."""


class InvalidGrid(BvpNodeError):
    """Sample vector does not match the expected uniform grid."""


class InvalidShift(BvpNodeError):
    """Circle reparametrization is not a monotone degree-one map."""


class WrongSide(BvpNodeError):
    """Evaluation point lies on the wrong side of the unit circle."""


class SpectrumProximity(BvpNodeError):
    """Spectral parameter is too close to a Dirichlet eigenvalue."""

    def __init__(self, lam, distance, threshold):
        self.lam = lam
        self.distance = distance
        self.threshold = threshold
        super().__init__(
            f"lambda={lam} is within {distance:.3e} of the Dirichlet spectrum "
            f"(threshold {threshold:.3e})"
        )


class SolverFailure(BvpNodeError):
    """A radial collocation system could not be factorized."""


class NonRealInput(BvpNodeError):
    """Operation requires real-valued boundary data."""


class RankDeficient(BvpNodeError):
    """Boundary system is rank deficient (raised only on request)."""


class InconsistentSystem(BvpNodeError):
    """Rank-deficient boundary system with data outside the range
    (raised only on request)."""


class ConfigError(BvpNodeError):
    """Problem configuration failed schema validation."""
