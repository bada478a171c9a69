"""Entanglement and purity measures of the cavity / second-mode pair.

Vacuum variance is 1/2 throughout; physical states have every symplectic
eigenvalue >= 1/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import CovarianceState
from .errors import NonphysicalStateError

#: Round-off slack below the vacuum symplectic floor.
PHYSICALITY_TOL = 1e-9
_DISC_TOL = 1e-12

#: Rows/columns of the (d, b2) pair within the 6x6 ordering.
_REDUCED_IDX = np.array([0, 1, 4, 5])


def _symplectic_form(n_modes: int) -> np.ndarray:
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k:2 * k + 2, 2 * k:2 * k + 2] = block
    return omega


def symplectic_spectrum(sigma: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of a 2n x 2n covariance matrix, ascending.

    Computed as the positive moduli of the eigenvalues of i * Omega * sigma
    (each doubly degenerate).
    """
    sigma = np.asarray(sigma, dtype=float)
    n = sigma.shape[0] // 2
    moduli = np.sort(np.abs(np.linalg.eigvals(_symplectic_form(n) @ sigma)))
    return moduli[1::2]


@dataclass(frozen=True)
class ReducedCovariance:
    """4x4 covariance of the (d, b2) pair, ordering [Q_d, P_d, Q_b2, P_b2]."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (4, 4):
            raise ValueError("reduced covariance must be 4x4")
        m = (m + m.T) / 2
        object.__setattr__(self, "matrix", m)
        if symplectic_spectrum(m).min() < 0.5 - PHYSICALITY_TOL:
            raise NonphysicalStateError(
                "reduced covariance violates the uncertainty relation")

    @property
    def v1(self) -> np.ndarray:
        return self.matrix[:2, :2]

    @property
    def v2(self) -> np.ndarray:
        return self.matrix[2:, 2:]

    @property
    def vc(self) -> np.ndarray:
        return self.matrix[:2, 2:]


@dataclass(frozen=True)
class EntanglementReport:
    """Scalar measures of a reduced two-mode Gaussian state."""

    E_N: float
    mu: float
    eta: float
    Sigma: float
    nu: tuple[float, float]


def reduce_state(state: CovarianceState) -> ReducedCovariance:
    """Trace out the intermediate mode b1."""
    return ReducedCovariance(state.sigma[np.ix_(_REDUCED_IDX, _REDUCED_IDX)])


def symplectic_eigenvalues(rc: ReducedCovariance) -> tuple[float, float]:
    """The two symplectic eigenvalues of the reduced state, ascending."""
    nu = symplectic_spectrum(rc.matrix)
    return (float(nu[0]), float(nu[1]))


def _sigma_invariant(rc: ReducedCovariance) -> tuple[float, float]:
    Sigma = (np.linalg.det(rc.v1) + np.linalg.det(rc.v2)
             - 2 * np.linalg.det(rc.vc))
    det = float(np.linalg.det(rc.matrix))
    return float(Sigma), det


def log_negativity(rc: ReducedCovariance) -> EntanglementReport:
    """Logarithmic negativity from the partially transposed spectrum.

    eta is the smaller symplectic eigenvalue of the partial transpose;
    E_N = max(0, -ln(2 eta)).
    """
    Sigma, det = _sigma_invariant(rc)
    if det <= 0:
        raise NonphysicalStateError(f"det(sigma_r) = {det} <= 0")
    disc = Sigma * Sigma - 4 * det
    if disc < -_DISC_TOL:
        raise NonphysicalStateError(
            f"partial-transpose discriminant {disc} is negative")
    eta = math.sqrt((Sigma - math.sqrt(max(disc, 0.0))) / 2)
    E_N = max(0.0, -math.log(2 * eta))
    return EntanglementReport(
        E_N=E_N,
        mu=purity(rc),
        eta=eta,
        Sigma=Sigma,
        nu=symplectic_eigenvalues(rc),
    )


def purity(rc: ReducedCovariance) -> float:
    """Purity 1 / (4 sqrt(det sigma_r)) of the reduced Gaussian state."""
    det = float(np.linalg.det(rc.matrix))
    if det <= 0:
        raise NonphysicalStateError(f"det(sigma_r) = {det} <= 0")
    mu = 1 / (4 * math.sqrt(det))
    if mu > 1 + PHYSICALITY_TOL:
        raise NonphysicalStateError(f"purity {mu} exceeds 1")
    return min(mu, 1.0)


def bogoliubov_occupations(state: CovarianceState,
                           r: float) -> tuple[float, float, float]:
    """Occupations of the two Bogoliubov modes and of b1.

    Applies the two-mode-squeeze symplectic map with parameter r to the
    (d, b2) quadratures (b1 untouched) and reads off n = (<Q^2>+<P^2>)/2
    - 1/2 for each transformed mode.  Returned in the order
    (beta1, beta2, b1).
    """
    if r < 0:
        raise ValueError("squeezing parameter must be >= 0")
    c, s = math.cosh(r), math.sinh(r)
    S = np.eye(6)
    S[0, 0], S[0, 4] = c, s      # Q_beta1 = Q_d c + Q_b2 s
    S[1, 1], S[1, 5] = c, -s     # P_beta1 = P_d c - P_b2 s
    S[4, 4], S[4, 0] = c, s      # Q_beta2 = Q_b2 c + Q_d s
    S[5, 5], S[5, 1] = c, -s     # P_beta2 = P_b2 c - P_d s
    sig = S @ state.sigma @ S.T
    def occ(i: int) -> float:
        return (sig[i, i] + sig[i + 1, i + 1]) / 2 - 0.5
    return (occ(0), occ(4), occ(2))
