"""Time evolution of the covariance matrix and its RWA steady state."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np
import scipy.linalg

from . import _core
from .errors import (
    DivergenceError,
    InstabilityError,
    NonConvergenceError,
    SingularSystemError,
    StepSizeError,
)
from .matrices import (
    DiffusionMatrix,
    DriftMode,
    DriftModel,
    diffusion,
    drift,
    min_oscillation_period,
)
from .model import SystemParams

#: Sub-steps per shortest oscillation period of the full drift.
_FULL_STEPS_PER_PERIOD = 50
#: RWA step control: h = 0.01 / fastest rate.
_RWA_RATE_FACTOR = 0.01
_PIVOT_FLOOR = 1e-14
_RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class CovarianceState:
    """Symmetrized 6x6 covariance matrix with its timestamp."""

    t: float
    sigma: np.ndarray

    def __post_init__(self) -> None:
        sigma = np.asarray(self.sigma, dtype=float)
        if sigma.shape != (6, 6):
            raise ValueError("covariance must be 6x6")
        object.__setattr__(self, "sigma", (sigma + sigma.T) / 2)


@dataclass(frozen=True)
class Trajectory:
    """Covariance samples at strictly increasing output times."""

    times: np.ndarray
    sigmas: np.ndarray

    def __post_init__(self) -> None:
        if len(self.times) != len(self.sigmas):
            raise ValueError("times/sigmas length mismatch")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("output times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    def __getitem__(self, i: int) -> CovarianceState:
        return CovarianceState(float(self.times[i]), self.sigmas[i])

    def states(self) -> Iterator[CovarianceState]:
        for i in range(len(self)):
            yield self[i]

    @property
    def final(self) -> CovarianceState:
        return self[len(self) - 1]


def thermal_initial_state(params: SystemParams) -> CovarianceState:
    """Each mode in thermal equilibrium with its local bath at t = 0."""
    return CovarianceState(0.0, np.diag([
        (2 * params.nbar_d + 1) / 2, (2 * params.nbar_d + 1) / 2,
        (2 * params.nbar_1 + 1) / 2, (2 * params.nbar_1 + 1) / 2,
        (2 * params.nbar_2 + 1) / 2, (2 * params.nbar_2 + 1) / 2,
    ]))


def _base_step(model: DriftModel) -> float:
    if model.mode is DriftMode.FULL:
        return min_oscillation_period(model) / _FULL_STEPS_PER_PERIOD
    p, c = model.params, model.couplings
    fastest = max(p.kappa, p.gamma1, p.gamma2, c.G_minus, abs(p.delta))
    return _RWA_RATE_FACTOR / fastest


def evolve(model: DriftModel, D: DiffusionMatrix, init: CovarianceState,
           t_end: float, dt_out: float) -> Trajectory:
    """Integrate sigma' = M(t) sigma + sigma M(t)^T + D with fixed-step RK4.

    The step is tied to the fastest time scale of the drift (shortest
    oscillation period over 50 in full mode, 0.01 over the fastest rate in
    RWA mode), truncated so samples land exactly on multiples of dt_out.
    """
    if t_end <= init.t:
        raise ValueError("t_end must exceed the initial time")
    if dt_out <= 0:
        raise ValueError("dt_out must be positive")
    h0 = min(dt_out, _base_step(model))
    n_sub = int(math.ceil(dt_out / h0))
    h = dt_out / n_sub
    if h < 1e-14 * max(1.0, abs(t_end)):
        raise StepSizeError(f"step size {h} underflows at t_end={t_end}")
    n_out = int(math.floor((t_end - init.t) / dt_out + 1e-9))

    if model.mode is DriftMode.RWA:
        status, out = _core.evolve_const(
            drift(model), D.diagonal, init.sigma, init.t, h, n_sub, n_out)
    else:
        p, c = model.params, model.couplings
        status, out = _core.evolve_full(
            p.kappa, p.gamma1, p.gamma2, p.delta, c.G_plus, c.G_minus,
            p.omega1, p.omega2, init.sigma, D.diagonal,
            init.t, h, n_sub, n_out)
    if status != 0:
        t_bad = init.t + (len(out) - 1) * dt_out
        raise DivergenceError(
            f"covariance diverged near t = {t_bad} (model unstable?)")
    out = (out + out.transpose(0, 2, 1)) / 2
    times = init.t + dt_out * np.arange(n_out + 1)
    return Trajectory(times, out)


def lyapunov_steady_state(model: DriftModel,
                          D: DiffusionMatrix) -> CovarianceState:
    """Stationary covariance of the constant RWA drift.

    Solves M sigma + sigma M^T + D = 0 by vectorization: a dense 36-unknown
    linear solve with partial pivoting.  The timestamp of the returned
    state is +inf.
    """
    from .stability import hurwitz_stable

    if model.mode is not DriftMode.RWA:
        raise ValueError("steady state is only defined for the RWA drift")
    if not hurwitz_stable(model):
        raise InstabilityError("RWA drift is not Hurwitz; no steady state")
    M = drift(model)
    Dm = D.matrix
    A = np.kron(np.eye(6), M) + np.kron(M, np.eye(6))
    lu, piv = scipy.linalg.lu_factor(A)
    if np.min(np.abs(np.diag(lu))) < _PIVOT_FLOOR:
        raise SingularSystemError("steady-state system is numerically singular")
    vec = scipy.linalg.lu_solve((lu, piv), -Dm.flatten(order="F"))
    sigma = vec.reshape(6, 6, order="F")
    sigma = (sigma + sigma.T) / 2
    residual = np.max(np.abs(M @ sigma + sigma @ M.T + Dm))
    if residual > _RESIDUAL_RTOL * np.max(np.abs(Dm)):
        raise NonConvergenceError(
            f"steady-state residual {residual} exceeds tolerance")
    return CovarianceState(math.inf, sigma)


def steady_state_for(params: SystemParams, model: DriftModel) -> CovarianceState:
    """Convenience wrapper: steady state with the bath-derived diffusion."""
    return lyapunov_steady_state(model, diffusion(params))
