"""Exception hierarchy shared by all omsim modules."""


class OmsimError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(OmsimError):
    """Invalid or incomplete run configuration."""


class SingularDenominatorError(OmsimError):
    """Classical amplitude denominator vanishes (undamped resonant drive)."""


class AmplitudeNotRealError(OmsimError):
    """Classical cavity amplitude has a non-negligible imaginary part."""


class CouplingMismatchError(OmsimError):
    """Drive-derived couplings do not match the modulation amplitudes."""


class InstabilityError(OmsimError):
    """Model violates the stability requirement (G+ < G- or non-Hurwitz drift)."""


class DivergenceError(OmsimError):
    """Covariance entries grew beyond the divergence threshold."""


class StepSizeError(OmsimError):
    """Integrator step size underflowed."""


class NonphysicalStateError(OmsimError):
    """Covariance matrix violates the uncertainty relation beyond tolerance."""


class NonConvergenceError(OmsimError):
    """Dense eigenvalue or linear-system iteration failed to converge."""


class SingularSystemError(OmsimError):
    """Vectorized steady-state system is numerically singular."""


class IncommensurateFrequenciesError(OmsimError):
    """Drift frequencies admit no common period."""


class EndpointOptimumError(OmsimError):
    """Sweep optimum sits on a grid endpoint; no refinement bracket exists."""
