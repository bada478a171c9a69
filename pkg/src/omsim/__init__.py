"""Simulator for reservoir-engineered entanglement in a hybrid modulated
three-mode optomechanical system.

Covariance-matrix dynamics of the linearized system: steady states via a
dense Lyapunov solve, time evolution via fixed-step RK4 (compiled kernel
with pure-Python fallback), stability via Hurwitz eigenvalues and Floquet
multipliers, and logarithmic-negativity / purity measures.
"""
from ._core import BACKEND
from .dynamics import (
    CovarianceState,
    Trajectory,
    evolve,
    lyapunov_steady_state,
    thermal_initial_state,
)
from .matrices import (
    DiffusionMatrix,
    DriftMode,
    DriftModel,
    diffusion,
    drift,
    g_terms,
    period,
)
from .measures import (
    EntanglementReport,
    ReducedCovariance,
    bogoliubov_occupations,
    log_negativity,
    purity,
    reduce_state,
    symplectic_eigenvalues,
    symplectic_spectrum,
)
from .model import (
    DriveSpec,
    EffectiveCouplings,
    SystemParams,
    classical_amplitudes,
    direct_couplings,
    effective_couplings,
)
from .stability import (
    FloquetResult,
    eigenvalues,
    floquet,
    floquet_from_propagator,
    hurwitz_stable,
    is_hurwitz,
    monodromy,
)
from .sweep import (
    SweepAxis,
    SweepResult,
    SweepSpec,
    default_grid,
    refine_optimum,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CovarianceState",
    "DiffusionMatrix",
    "DriftMode",
    "DriftModel",
    "DriveSpec",
    "EffectiveCouplings",
    "EntanglementReport",
    "FloquetResult",
    "ReducedCovariance",
    "SweepAxis",
    "SweepResult",
    "SweepSpec",
    "SystemParams",
    "Trajectory",
    "bogoliubov_occupations",
    "classical_amplitudes",
    "default_grid",
    "diffusion",
    "direct_couplings",
    "drift",
    "effective_couplings",
    "eigenvalues",
    "evolve",
    "floquet",
    "floquet_from_propagator",
    "g_terms",
    "hurwitz_stable",
    "is_hurwitz",
    "log_negativity",
    "lyapunov_steady_state",
    "monodromy",
    "period",
    "purity",
    "reduce_state",
    "refine_optimum",
    "run_sweep",
    "symplectic_eigenvalues",
    "symplectic_spectrum",
    "thermal_initial_state",
]
