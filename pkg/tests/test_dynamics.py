import math

import numpy as np
import pytest

from omsim import (
    CovarianceState,
    DriftMode,
    DriftModel,
    SystemParams,
    diffusion,
    direct_couplings,
    drift,
    evolve,
    lyapunov_steady_state,
    thermal_initial_state,
)
from omsim.errors import InstabilityError, StepSizeError
from omsim.matrices import DiffusionMatrix


def rwa_model(kappa=0.2, gamma2=0.1, delta=1.0, gp=0.4, gm=0.5, **kw):
    p = SystemParams(kappa=kappa, gamma2=gamma2, delta=delta, **kw)
    return DriftModel(p, direct_couplings(gp, gm), DriftMode.RWA)


class TestThermalInitialState:
    def test_vacuum(self):
        p = SystemParams(kappa=0.2, gamma2=0.1)
        np.testing.assert_allclose(thermal_initial_state(p).sigma,
                                   np.eye(6) / 2)

    def test_occupied(self):
        p = SystemParams(kappa=0.2, gamma2=0.1, nbar_1=2.0)
        sigma = thermal_initial_state(p).sigma
        assert sigma[2, 2] == 2.5
        assert sigma[0, 0] == 0.5


class TestEvolve:
    def test_decoupled_mode_matches_analytic_relaxation(self):
        # with G+ = G- = 0 each diagonal entry relaxes independently:
        # v(t) = v_inf + (v0 - v_inf) exp(-rate * t)
        p = SystemParams(kappa=0.2, gamma2=0.1, nbar_d=1.0, nbar_2=3.0)
        m = DriftModel(p, direct_couplings(0.0, 0.0), DriftMode.RWA)
        traj = evolve(m, diffusion(p), CovarianceState(0.0, np.eye(6) / 2),
                      t_end=5.0, dt_out=0.5)
        rates = [0.2, 0.2, 1.0, 1.0, 0.1, 0.1]
        v_inf = [1.5, 1.5, 0.5, 0.5, 3.5, 3.5]
        for state in traj.states():
            for i in range(6):
                expected = v_inf[i] + (0.5 - v_inf[i]) * \
                    math.exp(-rates[i] * state.t)
                assert state.sigma[i, i] == pytest.approx(expected, abs=1e-8)

    def test_output_grid(self):
        m = rwa_model()
        traj = evolve(m, diffusion(m.params), thermal_initial_state(m.params),
                      t_end=2.0, dt_out=0.25)
        np.testing.assert_allclose(traj.times, np.arange(9) * 0.25)
        assert traj.final.t == pytest.approx(2.0)

    def test_step_halving_convergence(self):
        # fixed-step RK4: halving the step shrinks the global error ~16x.
        # At h = 1.25e-4 vs 6.25e-5 the difference sits well below 1e-8.
        m = rwa_model()
        D = diffusion(m.params)
        init = thermal_initial_state(m.params)
        coarse = evolve(m, D, init, t_end=0.125, dt_out=1.25e-4)
        fine = evolve(m, D, init, t_end=0.125, dt_out=6.25e-5)
        diff = np.max(np.abs(coarse.final.sigma - fine.final.sigma))
        assert diff <= 1e-8

    def test_linearity_in_diffusion(self):
        # zero initial condition: the solution is linear in D
        m = rwa_model()
        D1 = diffusion(m.params)
        D2 = DiffusionMatrix(2 * np.asarray(D1.diagonal))
        init = CovarianceState(0.0, np.zeros((6, 6)))
        t1 = evolve(m, D1, init, t_end=1.0, dt_out=0.5)
        t2 = evolve(m, D2, init, t_end=1.0, dt_out=0.5)
        np.testing.assert_allclose(t2.final.sigma, 2 * t1.final.sigma,
                                   rtol=1e-12, atol=1e-15)

    def test_symmetry_and_physicality(self, paper_model):
        D = diffusion(paper_model.params)
        traj = evolve(paper_model, D,
                      thermal_initial_state(paper_model.params),
                      t_end=50.0, dt_out=10.0)
        from omsim import symplectic_spectrum
        for state in traj.states():
            np.testing.assert_allclose(state.sigma, state.sigma.T)
            assert symplectic_spectrum(state.sigma).min() >= 0.5 - 1e-9

    def test_step_underflow_rejected(self):
        m = rwa_model()
        init = thermal_initial_state(m.params)
        with pytest.raises(StepSizeError):
            evolve(m, diffusion(m.params), init, t_end=1.0, dt_out=1e-15)

    def test_bad_output_window_rejected(self):
        m = rwa_model()
        init = thermal_initial_state(m.params)
        with pytest.raises(ValueError):
            evolve(m, diffusion(m.params), init, t_end=-1.0, dt_out=0.1)
        with pytest.raises(ValueError):
            evolve(m, diffusion(m.params), init, t_end=1.0, dt_out=0.0)


class TestLyapunovSteadyState:
    def test_residual_contract(self, paper_model):
        D = diffusion(paper_model.params)
        state = lyapunov_steady_state(paper_model, D)
        M = drift(paper_model)
        residual = M @ state.sigma + state.sigma @ M.T + D.matrix
        assert np.max(np.abs(residual)) <= 1e-10 * np.max(np.abs(D.matrix))
        assert state.t == math.inf

    def test_decoupled_steady_state_is_thermal(self):
        p = SystemParams(kappa=0.2, gamma2=0.1, nbar_d=1.0, nbar_2=3.0)
        m = DriftModel(p, direct_couplings(0.0, 0.0), DriftMode.RWA)
        state = lyapunov_steady_state(m, diffusion(p))
        np.testing.assert_allclose(
            state.sigma, np.diag([1.5, 1.5, 0.5, 0.5, 3.5, 3.5]),
            rtol=1e-12, atol=1e-12)

    def test_long_evolution_converges_to_steady_state(self):
        m = rwa_model(kappa=0.05, gamma2=0.05)
        D = diffusion(m.params)
        target = lyapunov_steady_state(m, D)
        traj = evolve(m, D, thermal_initial_state(m.params),
                      t_end=400.0, dt_out=100.0)
        diff = np.max(np.abs(traj.final.sigma - target.sigma))
        assert diff <= 1e-6

    def test_unstable_model_rejected(self):
        # no damping anywhere except gamma1, strong coupling: not Hurwitz
        m = rwa_model(kappa=0.0, gamma2=0.0, delta=0.0, gp=0.0, gm=5.0)
        with pytest.raises(InstabilityError):
            lyapunov_steady_state(m, diffusion(m.params))

    def test_full_mode_rejected(self, modulated_model):
        with pytest.raises(ValueError):
            lyapunov_steady_state(modulated_model,
                                  diffusion(modulated_model.params))
