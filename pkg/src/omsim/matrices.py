"""Drift and diffusion matrices of the linearized covariance dynamics.

Quadrature ordering everywhere: [Q_d, P_d, Q_b1, P_b1, Q_b2, P_b2].
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .model import EffectiveCouplings, SystemParams

#: Denominator cap and relative accuracy for the rational approximation of
#: frequency ratios when searching for a common drift period.
_PERIOD_MAX_DEN = 10**6
_PERIOD_RTOL = 1e-9
#: Acceptance tolerance for the numerical M(t) == M(t+T) verification.
_PERIOD_VERIFY_TOL = 1e-10


class DriftMode(Enum):
    FULL = "full"
    RWA = "rwa"


@dataclass(frozen=True)
class DriftModel:
    """Parameter bundle fixing a drift matrix family."""

    params: SystemParams
    couplings: EffectiveCouplings
    mode: DriftMode = DriftMode.RWA

    def __post_init__(self) -> None:
        if self.mode is DriftMode.FULL:
            if self.params.omega1 <= 0 or self.params.omega2 <= 0:
                raise ValueError(
                    "full-mode drift requires omega1 > 0 and omega2 > 0")


@dataclass(frozen=True)
class DiffusionMatrix:
    """Diagonal input-noise covariance feeding the covariance ODE."""

    diagonal: np.ndarray

    def __post_init__(self) -> None:
        diag = np.asarray(self.diagonal, dtype=float)
        if diag.shape != (6,) or np.any(diag < 0):
            raise ValueError("diffusion diagonal must be 6 nonnegative entries")
        object.__setattr__(self, "diagonal", diag)

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal)


def g_terms(model: DriftModel, t: float) -> tuple[complex, complex, complex, complex]:
    """Time-dependent coupling amplitudes entering the drift matrix.

    In RWA mode every oscillating term is dropped and the constant parts
    (G+, G-, G+, G-) are returned for all t.
    """
    gp, gm = model.couplings.G_plus, model.couplings.G_minus
    if model.mode is DriftMode.RWA:
        return (complex(gp), complex(gm), complex(gp), complex(gm))
    p = model.params
    p1 = cmath.exp(2j * p.omega1 * t)
    p2 = cmath.exp(2j * (p.omega2 + p.delta) * t)
    g1 = gp + gm * p1
    g2 = gm + gp * p1.conjugate()
    g3 = gp * (1 + p1 * p2) + gm * (p2 + p1)
    g4 = gm * (1 + p1 * p2.conjugate()) + gp * (p2.conjugate() + p1)
    return (g1, g2, g3, g4)


def drift(model: DriftModel, t: float = 0.0) -> np.ndarray:
    """6x6 drift matrix M(t); constant in RWA mode."""
    p = model.params
    g1, g2, g3, g4 = g_terms(model, t)
    a = (g1 + g2).imag
    b = (g2 - g1).real
    c = (g1 - g2).imag
    e = -(g1 + g2).real
    u = (g3 + g4).imag
    v = (g4 - g3).real
    w = (g3 - g4).imag
    x = -(g3 + g4).real
    k2, d = p.kappa / 2, p.delta
    m1, m2 = p.gamma1 / 2, p.gamma2 / 2
    return np.array([
        [-k2,  d,   a,   b,  0.0, 0.0],
        [-d,  -k2,  e,  -c,  0.0, 0.0],
        [c,    b,  -m1,  0.0, u,   v],
        [e,   -a,   0.0, -m1, x,  -w],
        [0.0,  0.0, w,   v,  -m2, -d],
        [0.0,  0.0, x,  -u,   d,  -m2],
    ])


def diffusion(params: SystemParams) -> DiffusionMatrix:
    """Diagonal diffusion matrix from the bath occupancies."""
    return DiffusionMatrix(np.array([
        params.kappa * (2 * params.nbar_d + 1) / 2,
        params.kappa * (2 * params.nbar_d + 1) / 2,
        params.gamma1 * (2 * params.nbar_1 + 1) / 2,
        params.gamma1 * (2 * params.nbar_1 + 1) / 2,
        params.gamma2 * (2 * params.nbar_2 + 1) / 2,
        params.gamma2 * (2 * params.nbar_2 + 1) / 2,
    ]))


def angular_frequencies(model: DriftModel) -> tuple[float, float, float, float]:
    """The four oscillation frequencies present in the full drift."""
    p = model.params
    return (2 * p.omega1,
            2 * (p.omega2 + p.delta),
            2 * (p.omega1 + p.omega2 + p.delta),
            2 * abs(p.omega1 - p.omega2 - p.delta))


def min_oscillation_period(model: DriftModel) -> float:
    """Shortest oscillation period appearing in M(t)."""
    fmax = max(angular_frequencies(model))
    if fmax <= 0:
        raise ValueError("drift has no oscillating terms")
    return 2 * math.pi / fmax


def period(model: DriftModel) -> float | None:
    """Common period T of M(t), or None if the frequencies are incommensurate.

    Frequency ratios are approximated by fractions with denominator at most
    10^6 and relative error at most 1e-9; the candidate period is then
    verified numerically against the drift itself, which rejects irrational
    ratios that happen to admit a very accurate rational approximation.
    """
    if model.mode is not DriftMode.FULL:
        raise ValueError("period is only defined for the full drift")
    freqs = [f for f in angular_frequencies(model) if f > 0]
    if not freqs:
        return None
    fmin = min(freqs)
    fracs: list[Fraction] = []
    for f in freqs:
        ratio = f / fmin
        frac = Fraction(ratio).limit_denominator(_PERIOD_MAX_DEN)
        if abs(float(frac) - ratio) > _PERIOD_RTOL * ratio:
            return None
        fracs.append(frac)
    lcm_den = math.lcm(*(fr.denominator for fr in fracs))
    nums = [fr.numerator * (lcm_den // fr.denominator) for fr in fracs]
    f_gcd = fmin * math.gcd(*nums) / lcm_den
    T = 2 * math.pi / f_gcd
    if not _verify_period(model, T):
        return None
    return T


def _verify_period(model: DriftModel, T: float) -> bool:
    scale = max(1.0, abs(model.params.delta),
                2 * (model.couplings.G_plus + model.couplings.G_minus))
    for t in np.linspace(0.0, T, 7):
        if np.max(np.abs(drift(model, t) - drift(model, t + T))) \
                > _PERIOD_VERIFY_TOL * scale:
            return False
    return True
