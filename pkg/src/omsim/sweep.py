"""Parameter scans over the coupling ratio G+/G- and the detuning."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .dynamics import lyapunov_steady_state
from .errors import EndpointOptimumError, InstabilityError
from .matrices import DiffusionMatrix, DriftMode, DriftModel, diffusion
from .measures import log_negativity, reduce_state
from .model import EffectiveCouplings, SystemParams, direct_couplings
from .stability import hurwitz_stable

GOLDEN_TOL = 1e-4
_INVPHI = (math.sqrt(5) - 1) / 2


class SweepAxis(Enum):
    COUPLING_RATIO = "coupling_ratio"
    DETUNING = "detuning"


def default_grid(axis: SweepAxis) -> np.ndarray:
    """200 points: uniform on (0.01, 0.99) for the ratio, log-spaced on
    (0.05, 10) for the detuning."""
    if axis is SweepAxis.COUPLING_RATIO:
        return np.linspace(0.01, 0.99, 200)
    return np.geomspace(0.05, 10.0, 200)


@dataclass(frozen=True)
class SweepSpec:
    """A one-axis scan around a base parameter set (RWA steady states)."""

    params: SystemParams
    couplings: EffectiveCouplings
    axis: SweepAxis
    grid: np.ndarray
    with_occupations: bool = False

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        if grid.size == 0:
            raise ValueError("sweep grid is empty")
        if grid.size > 1 and np.any(np.diff(grid) <= 0):
            raise ValueError("sweep grid must be strictly increasing")
        if self.axis is SweepAxis.COUPLING_RATIO and \
                (grid.min() <= 0 or grid.max() >= 1):
            raise ValueError("coupling-ratio grid values must lie in (0, 1)")
        object.__setattr__(self, "grid", grid)


@dataclass(frozen=True)
class SweepRow:
    value: float
    E_N: float
    mu: float
    stable: bool


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    optimum: tuple[float, float] | None  # (axis value, E_N)
    all_unstable: bool


def _point_model(spec: SweepSpec, value: float) -> DriftModel:
    if spec.axis is SweepAxis.COUPLING_RATIO:
        couplings = direct_couplings(value * spec.couplings.G_minus,
                                     spec.couplings.G_minus)
        params = spec.params
    else:
        couplings = spec.couplings
        params = replace(spec.params, delta=float(value))
    return DriftModel(params, couplings, DriftMode.RWA)


def evaluate_point(spec: SweepSpec, value: float) -> SweepRow:
    """Steady-state measures at one grid value; unstable points carry NaNs."""
    model = _point_model(spec, value)
    if not hurwitz_stable(model):
        return SweepRow(float(value), math.nan, math.nan, False)
    state = lyapunov_steady_state(model, diffusion(model.params))
    report = log_negativity(reduce_state(state))
    return SweepRow(float(value), report.E_N, report.mu, True)


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Scan the grid in order; locate the maximum-E_N stable row.

    Ties break toward the smaller axis value.  Grid points are independent;
    rows are reported in grid order.
    """
    rows = tuple(evaluate_point(spec, v) for v in spec.grid)
    best: tuple[float, float] | None = None
    for row in rows:
        if row.stable and (best is None or row.E_N > best[1]):
            best = (row.value, row.E_N)
    return SweepResult(rows=rows, optimum=best,
                       all_unstable=best is None)


def refine_optimum(spec: SweepSpec,
                   result: SweepResult) -> tuple[float, float]:
    """Golden-section refinement of E_N around an interior grid optimum.

    Assumes unimodality on the bracketing interval; converges the axis
    value to 1e-4.
    """
    if result.optimum is None:
        raise InstabilityError("no stable row to refine")
    values = [row.value for row in result.rows]
    i = values.index(result.optimum[0])
    if i == 0 or i == len(values) - 1:
        raise EndpointOptimumError(
            "grid optimum sits on an endpoint; no refinement bracket")

    def f(x: float) -> float:
        row = evaluate_point(spec, x)
        return row.E_N if row.stable else -math.inf

    lo, hi = values[i - 1], values[i + 1]
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > GOLDEN_TOL:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
    x_best = (lo + hi) / 2
    return (x_best, f(x_best))
