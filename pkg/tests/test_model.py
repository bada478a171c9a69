import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from omsim import (
    DriveSpec,
    SystemParams,
    classical_amplitudes,
    direct_couplings,
    effective_couplings,
)
from omsim.errors import (
    AmplitudeNotRealError,
    CouplingMismatchError,
    InstabilityError,
    SingularDenominatorError,
)


def drive(eps_plus=0j, eps_minus=0j, g1=1.0, g2A=0.0, g2B=0.0):
    return DriveSpec(eps_plus, eps_minus, g1, g2A, g2B)


def drive_for_amplitudes(params, a_plus, a_minus, g1=1.0):
    """Phase-adjusted drive tones producing the requested real amplitudes."""
    denom_p = complex(-params.kappa / 2, -params.delta + params.omega1)
    denom_m = complex(-params.kappa / 2, -params.delta - params.omega1)
    return DriveSpec(a_plus * denom_p / 1j, a_minus * denom_m / 1j,
                     g1, g1 * a_plus, g1 * a_minus)


class TestClassicalAmplitudes:
    def test_zero_drive(self):
        p = SystemParams(kappa=0.2, gamma2=0.1, delta=1.0, omega1=10.0)
        a_plus, a_minus = classical_amplitudes(p, drive(eps_minus=1.0))
        assert a_plus == 0

    def test_magnitude_matches_complex_arithmetic(self):
        p = SystemParams(kappa=0.2, gamma2=0.1, delta=1.0, omega1=10.0)
        _, a_minus = classical_amplitudes(p, drive(eps_minus=1.0))
        expected = abs(1j * 1.0 / complex(-0.1, -1.0 - 10.0))
        assert expected == pytest.approx(1 / math.sqrt(0.01 + 121))
        assert abs(a_minus) == pytest.approx(expected, rel=1e-12)

    def test_undamped_resonance_rejected(self):
        p = SystemParams(kappa=0.0, gamma2=0.1, delta=-10.0, omega1=10.0)
        with pytest.raises(SingularDenominatorError):
            classical_amplitudes(p, drive(eps_plus=1.0))

    @given(eps=st.floats(0.1, 10), scale=st.floats(0.5, 4))
    def test_linearity_in_drive(self, eps, scale):
        p = SystemParams(kappa=0.2, gamma2=0.1, delta=1.0, omega1=10.0)
        a1 = classical_amplitudes(p, drive(eps_plus=eps, eps_minus=eps))
        a2 = classical_amplitudes(
            p, drive(eps_plus=scale * eps, eps_minus=scale * eps))
        assert a2[0] == pytest.approx(scale * a1[0], rel=1e-12)
        assert a2[1] == pytest.approx(scale * a1[1], rel=1e-12)


class TestEffectiveCouplings:
    def test_paper_optimum_squeezing(self):
        c = direct_couplings(0.918 * 2.5, 2.5)
        assert c.r == pytest.approx(math.atanh(0.918), rel=1e-12)
        assert 2 * c.r == pytest.approx(3.152, abs=5e-4)

    def test_no_squeezing(self):
        p = SystemParams(kappa=0.001, gamma2=0.1, delta=1.0, omega1=10.0)
        c = effective_couplings(p, drive_for_amplitudes(p, 0.0, 2.0))
        assert c.r == 0
        assert c.G == c.G_minus
        assert c.G_minus == pytest.approx(2.0, rel=1e-12)
        assert c.G_plus == 0

    def test_equal_couplings_rejected(self):
        p = SystemParams(kappa=0.001, gamma2=0.1, delta=1.0, omega1=10.0)
        with pytest.raises(InstabilityError):
            effective_couplings(p, drive_for_amplitudes(p, 2.0, 2.0))

    def test_mismatched_modulation_rejected(self):
        p = SystemParams(kappa=0.001, gamma2=0.1, delta=1.0, omega1=10.0)
        d = drive_for_amplitudes(p, 1.0, 2.0)
        bad = DriveSpec(d.epsilon_plus, d.epsilon_minus, d.g1, 1.5, d.g2B)
        with pytest.raises(CouplingMismatchError):
            effective_couplings(p, bad)

    def test_complex_amplitude_rejected(self):
        p = SystemParams(kappa=0.2, gamma2=0.1, delta=1.0, omega1=10.0)
        # unadjusted real drive tones leave a kappa-induced phase on a_pm
        with pytest.raises(AmplitudeNotRealError):
            effective_couplings(p, drive(eps_plus=1.0, eps_minus=2.0))


class TestDirectCouplings:
    def test_zero_plus(self):
        c = direct_couplings(0.0, 2.5)
        assert c.r == 0
        assert c.G == 2.5

    def test_paper_ratio(self):
        c = direct_couplings(0.918 * 2.5, 2.5)
        assert c.G == pytest.approx(math.sqrt(2.5**2 * (1 - 0.918**2)),
                                    rel=1e-12)
        assert c.G == pytest.approx(0.9906, abs=1e-3)

    def test_boundary_rejected(self):
        with pytest.raises(InstabilityError):
            direct_couplings(2.5, 2.5)

    @given(ratio=st.floats(0.0, 0.999), g_minus=st.floats(1e-3, 10))
    def test_identities(self, ratio, g_minus):
        c = direct_couplings(ratio * g_minus, g_minus)
        assert math.tanh(c.r) * c.G_minus == pytest.approx(
            c.G_plus, abs=1e-15 * g_minus)
        assert c.G**2 + c.G_plus**2 == pytest.approx(c.G_minus**2, rel=1e-12)


class TestSystemParams:
    def test_gamma1_is_the_unit(self):
        with pytest.raises(ValueError):
            SystemParams(kappa=0.1, gamma2=0.1, gamma1=0.5)

    def test_negative_rate_rejected(self):
        with pytest.raises(ValueError):
            SystemParams(kappa=-0.1, gamma2=0.1)

    def test_rwa_flag(self):
        c = direct_couplings(0.4, 0.5)
        strongly_resolved = SystemParams(kappa=0.1, gamma2=0.1, delta=1.0,
                                         omega1=50.0, omega2=500.0)
        assert strongly_resolved.rwa_valid(c)
        marginal = SystemParams(kappa=0.1, gamma2=0.1, delta=1.0,
                                omega1=2.0, omega2=500.0)
        assert not marginal.rwa_valid(c)
