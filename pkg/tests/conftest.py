import numpy as np
import pytest

from omsim import (
    CovarianceState,
    DriftMode,
    DriftModel,
    SystemParams,
    direct_couplings,
)

RATIO_OPT = 0.918
G_MINUS = 2.5


@pytest.fixture(scope="session")
def paper_params():
    """Rates of the quoted optimum: kappa = gamma2 = 1/2000, delta = 1."""
    return SystemParams(kappa=1 / 2000, gamma2=1 / 2000, delta=1.0)


@pytest.fixture(scope="session")
def paper_couplings():
    return direct_couplings(RATIO_OPT * G_MINUS, G_MINUS)


@pytest.fixture(scope="session")
def paper_model(paper_params, paper_couplings):
    return DriftModel(paper_params, paper_couplings, DriftMode.RWA)


@pytest.fixture(scope="session")
def modulated_params():
    """Optimum rates plus the mechanical frequencies of the time-dependent run."""
    return SystemParams(kappa=1 / 2000, gamma2=1 / 2000, delta=1.0,
                        omega1=10.0, omega2=100.0)


@pytest.fixture(scope="session")
def modulated_model(modulated_params, paper_couplings):
    return DriftModel(modulated_params, paper_couplings, DriftMode.FULL)


def tmsv_reduced(r, sign=-1):
    """4x4 two-mode squeezed vacuum covariance on [Q_d, P_d, Q_b2, P_b2].

    sign=-1 gives Vc = diag(-1, +1) sinh(2r)/2, the vacuum of the
    Bogoliubov modes used by the cooling scheme; sign=+1 the mirrored
    convention.  Entanglement measures are identical for both.
    """
    ch, sh = np.cosh(2 * r) / 2, np.sinh(2 * r) / 2
    m = np.diag([ch, ch, ch, ch])
    m[0, 2] = m[2, 0] = sign * sh
    m[1, 3] = m[3, 1] = -sign * sh
    return m


def tmsv_state(r, sign=-1):
    """6x6 state: TMSV on (d, b2), vacuum on b1."""
    sigma = np.eye(6) / 2
    rc = tmsv_reduced(r, sign)
    idx = np.array([0, 1, 4, 5])
    sigma[np.ix_(idx, idx)] = rc
    return CovarianceState(0.0, sigma)
