"""Physical parameters and derivation of the effective couplings.

All rates and frequencies are dimensionless multiples of the intermediate
mechanical damping rate, which is the base unit and therefore always 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    AmplitudeNotRealError,
    CouplingMismatchError,
    InstabilityError,
    SingularDenominatorError,
)

#: Advisory margin for the rotating-wave approximation: every retained
#: frequency must exceed the strongest coupling by at least this factor.
RWA_VALIDITY_RATIO = 10.0

_MATCH_RTOL = 1e-9
_IMAG_RTOL = 1e-6


@dataclass(frozen=True)
class SystemParams:
    """Rates, frequencies and bath occupancies of the three-mode system.

    ``gamma1`` is the unit of every other rate and must stay exactly 1.
    ``omega1``/``omega2`` are only consulted by the full time-dependent
    drift; they may be left at 0 for purely rotating-wave work.
    """

    kappa: float
    gamma2: float
    delta: float = 0.0
    omega1: float = 0.0
    omega2: float = 0.0
    gamma1: float = 1.0
    nbar_d: float = 0.0
    nbar_1: float = 0.0
    nbar_2: float = 0.0

    def __post_init__(self) -> None:
        if self.gamma1 != 1.0:
            raise ValueError("gamma1 is the base unit and must equal 1 exactly")
        for name in ("kappa", "gamma2", "omega1", "omega2",
                     "nbar_d", "nbar_1", "nbar_2"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {value}")
        if not math.isfinite(self.delta):
            raise ValueError("delta must be finite")

    def rwa_valid(self, couplings: "EffectiveCouplings") -> bool:
        """Advisory flag: retained frequencies dominate the couplings.

        Never blocking; some published parameter sets sit below the margin
        yet the approximation still holds well.
        """
        scale = RWA_VALIDITY_RATIO * max(couplings.G_plus, couplings.G_minus)
        slowest = min(self.omega1, self.omega2,
                      abs(self.omega1 - self.omega2 - self.delta))
        return slowest >= scale


@dataclass(frozen=True)
class DriveSpec:
    """Two-tone drive amplitudes and bare coupling strengths."""

    epsilon_plus: complex
    epsilon_minus: complex
    g1: float
    g2A: float
    g2B: float


@dataclass(frozen=True)
class EffectiveCouplings:
    """Effective linearized couplings G+ < G- and derived quantities.

    ``a_plus``/``a_minus`` carry the classical amplitudes when the couplings
    were derived from a drive; they stay ``None`` for direct construction.
    """

    G_plus: float
    G_minus: float
    a_plus: complex | None = None
    a_minus: complex | None = None

    def __post_init__(self) -> None:
        if self.G_plus < 0:
            raise InstabilityError(f"G_plus must be >= 0, got {self.G_plus}")
        # G+ = G- = 0 is the fully decoupled system, harmless by itself
        if not self.G_plus < self.G_minus and self.G_minus != 0:
            raise InstabilityError(
                f"stability requires G_plus < G_minus, got "
                f"{self.G_plus} >= {self.G_minus}")
        if self.G_plus > 0 and self.G_minus == 0:
            raise InstabilityError("G_plus > 0 requires G_minus > G_plus")

    @property
    def r(self) -> float:
        """Two-mode squeezing parameter atanh(G+/G-)."""
        if self.G_minus == 0:
            return 0.0
        return math.atanh(self.G_plus / self.G_minus)

    @property
    def G(self) -> float:
        """Effective Bogoliubov-mode cooling coupling sqrt(G-^2 - G+^2)."""
        return math.sqrt(self.G_minus**2 - self.G_plus**2)

    @property
    def ratio(self) -> float:
        return self.G_plus / self.G_minus


def classical_amplitudes(params: SystemParams,
                         drive: DriveSpec) -> tuple[complex, complex]:
    """Classical cavity field amplitudes for the two drive tones.

    a_pm = i eps_pm / (-kappa/2 - i delta +- i omega1).  The denominators
    vanish only for an undamped cavity driven exactly on resonance; that
    case is rejected rather than returning infinities.
    """
    denom_p = complex(-params.kappa / 2, -params.delta + params.omega1)
    denom_m = complex(-params.kappa / 2, -params.delta - params.omega1)
    scale = max(params.kappa / 2, abs(params.delta), params.omega1)
    for label, denom in (("+", denom_p), ("-", denom_m)):
        if abs(denom) <= 1e-12 * scale or denom == 0:
            raise SingularDenominatorError(
                f"amplitude denominator for the {label} tone vanishes "
                f"(kappa={params.kappa}, delta={params.delta}, "
                f"omega1={params.omega1})")
    return (1j * drive.epsilon_plus / denom_p,
            1j * drive.epsilon_minus / denom_m)


def _real_amplitude(a: complex, label: str) -> float:
    if abs(a) > 0 and abs(a.imag) / abs(a) >= _IMAG_RTOL:
        raise AmplitudeNotRealError(
            f"classical amplitude a_{label} = {a} is not real within "
            f"relative tolerance {_IMAG_RTOL}")
    return a.real


def effective_couplings(params: SystemParams,
                        drive: DriveSpec) -> EffectiveCouplings:
    """Derive G+- from the drive and verify the matching condition.

    Requires g1*a_plus == g2A and g1*a_minus == g2B to relative 1e-9; the
    scheme only yields the intended interaction when drive and modulation
    amplitudes are matched.
    """
    a_plus, a_minus = classical_amplitudes(params, drive)
    G_plus = drive.g1 * _real_amplitude(a_plus, "+")
    G_minus = drive.g1 * _real_amplitude(a_minus, "-")
    for got, want, label in ((G_plus, drive.g2A, "g2A"),
                             (G_minus, drive.g2B, "g2B")):
        tol = _MATCH_RTOL * max(abs(got), abs(want))
        if abs(got - want) > tol:
            raise CouplingMismatchError(
                f"matching condition violated for {label}: "
                f"g1*a = {got!r} but {label} = {want!r}")
    return EffectiveCouplings(G_plus, G_minus, a_plus=a_plus, a_minus=a_minus)


def direct_couplings(G_plus: float, G_minus: float) -> EffectiveCouplings:
    """Construct couplings directly, bypassing any drive bookkeeping."""
    return EffectiveCouplings(float(G_plus), float(G_minus))
