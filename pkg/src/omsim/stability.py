"""Stability analysis: Hurwitz spectrum and Floquet multipliers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _core
from .errors import (
    DivergenceError,
    IncommensurateFrequenciesError,
    NonConvergenceError,
)
from .matrices import DriftMode, DriftModel, drift, min_oscillation_period, period

#: Real parts must sit strictly below this margin to count as Hurwitz.
HURWITZ_MARGIN = -1e-12
#: Propagator sub-steps per shortest oscillation period.
_PROP_STEPS_PER_PERIOD = 100


def eigenvalues(M: np.ndarray) -> np.ndarray:
    """All eigenvalues of a real square matrix, sorted by (real, imag).

    Delegates to LAPACK's Hessenberg-reduction + shifted-QR driver.
    """
    M = np.asarray(M, dtype=float)
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    try:
        vals = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise NonConvergenceError(f"QR iteration failed: {exc}") from exc
    return vals[np.lexsort((vals.imag, vals.real))]


def is_hurwitz(M: np.ndarray) -> bool:
    """True iff every eigenvalue has real part < -1e-12.

    Marginal spectra count as unstable; steady-state solvers need strict
    contraction.
    """
    return float(eigenvalues(M).real.max()) < HURWITZ_MARGIN


def hurwitz_stable(model: DriftModel) -> bool:
    """Hurwitz criterion for the constant RWA drift."""
    if model.mode is not DriftMode.RWA:
        raise ValueError("Hurwitz criterion applies to the constant RWA drift")
    return is_hurwitz(drift(model))


@dataclass(frozen=True)
class FloquetResult:
    """One-period propagator spectrum of a periodic drift."""

    multipliers: np.ndarray
    period: float
    max_modulus: float
    stable: bool


def monodromy(drift_fn: Callable[[float], np.ndarray], t0: float,
              T: float, n_steps: int) -> np.ndarray:
    """RK4 one-period propagator of Pi' = A(t) Pi from Pi(t0) = I.

    Generic (callable-driven) variant used for arbitrary coefficient
    matrices; the model-specific path goes through the compiled kernel.
    """
    h = T / n_steps
    pi = np.eye(len(drift_fn(t0)))
    for step in range(n_steps):
        t = t0 + step * h
        a1 = drift_fn(t)
        a2 = drift_fn(t + h / 2)
        a4 = drift_fn(t + h)
        k1 = a1 @ pi
        k2 = a2 @ (pi + (h / 2) * k1)
        k3 = a2 @ (pi + (h / 2) * k2)
        k4 = a4 @ (pi + h * k3)
        pi = pi + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    return pi


def floquet_from_propagator(pi_T: np.ndarray, T: float) -> FloquetResult:
    """Package the multiplier spectrum of a one-period propagator."""
    if not np.all(np.isfinite(pi_T)):
        raise DivergenceError("propagator integration diverged")
    multipliers = eigenvalues(pi_T)
    max_modulus = float(np.abs(multipliers).max())
    return FloquetResult(multipliers=multipliers, period=T,
                         max_modulus=max_modulus, stable=max_modulus < 1.0)


def floquet(model: DriftModel) -> FloquetResult:
    """Floquet multipliers of the periodic full drift.

    With Pi(0) = I the monodromy matrix is simply Pi(T); no inverse is
    needed.
    """
    if model.mode is not DriftMode.FULL:
        raise ValueError("Floquet analysis applies to the full drift")
    T = period(model)
    if T is None:
        raise IncommensurateFrequenciesError(
            "drift frequencies admit no common period")
    n_steps = int(math.ceil(T / (min_oscillation_period(model)
                                 / _PROP_STEPS_PER_PERIOD)))
    p, c = model.params, model.couplings
    pi_T = _core.propagator_full(
        p.kappa, p.gamma1, p.gamma2, p.delta, c.G_plus, c.G_minus,
        p.omega1, p.omega2, 0.0, T / n_steps, n_steps)
    return floquet_from_propagator(pi_T, T)
