"""Pure-Python reference kernels for the covariance integrators.

Same call signatures as the compiled module ``_fast``; selected as a
fallback when the extension is not built.  Both run classical fixed-step
RK4 on the same stage times; the compiled kernel advances the oscillation
phasors by complex recurrence (resynchronized periodically), so the two
agree to rounding rather than bitwise.
"""
from __future__ import annotations

import numpy as np

COMPILED = False

#: Any covariance entry beyond this magnitude signals instability.
DIVERGENCE_LIMIT = 1e12


def _full_drift(kappa, gamma1, gamma2, delta, gp, gm, w1, w2, t):
    p1 = np.exp(2j * w1 * t)
    p2 = np.exp(2j * (w2 + delta) * t)
    g1 = gp + gm * p1
    g2 = gm + gp * np.conj(p1)
    g3 = gp * (1 + p1 * p2) + gm * (p2 + p1)
    g4 = gm * (1 + p1 * np.conj(p2)) + gp * (np.conj(p2) + p1)
    a = (g1 + g2).imag
    b = (g2 - g1).real
    c = (g1 - g2).imag
    e = -(g1 + g2).real
    u = (g3 + g4).imag
    v = (g4 - g3).real
    w = (g3 - g4).imag
    x = -(g3 + g4).real
    return np.array([
        [-kappa / 2, delta, a, b, 0.0, 0.0],
        [-delta, -kappa / 2, e, -c, 0.0, 0.0],
        [c, b, -gamma1 / 2, 0.0, u, v],
        [e, -a, 0.0, -gamma1 / 2, x, -w],
        [0.0, 0.0, w, v, -gamma2 / 2, -delta],
        [0.0, 0.0, x, -u, delta, -gamma2 / 2],
    ])


def _step_sigma(m1, m2, m4, sigma, h, dmat):
    """One RK4 step of sigma' = M sigma + sigma M^T + D.

    m1, m2, m4 are the drift at t, t+h/2 and t+h (stages 2 and 3 share m2).
    """
    k1 = m1 @ sigma
    k1 = k1 + k1.T + dmat
    s = sigma + (h / 2) * k1
    k2 = m2 @ s
    k2 = k2 + k2.T + dmat
    s = sigma + (h / 2) * k2
    k3 = m2 @ s
    k3 = k3 + k3.T + dmat
    s = sigma + h * k3
    k4 = m4 @ s
    k4 = k4 + k4.T + dmat
    return sigma + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)


def evolve_const(M, d_diag, sigma0, t0, h, n_sub, n_out):
    """Integrate with a constant drift, emitting every n_sub steps.

    Returns (status, out) where out[0] is the initial state and status is
    0 on success, 1 on divergence (out is then partially filled).
    """
    M = np.asarray(M, dtype=float)
    dmat = np.diag(np.asarray(d_diag, dtype=float))
    out = np.empty((n_out + 1, 6, 6))
    out[0] = sigma = np.array(sigma0, dtype=float)
    for io in range(1, n_out + 1):
        for _ in range(n_sub):
            sigma = _step_sigma(M, M, M, sigma, h, dmat)
        out[io] = sigma
        if not np.all(np.isfinite(sigma)) or \
                np.max(np.abs(sigma)) > DIVERGENCE_LIMIT:
            return 1, out[:io + 1]
    return 0, out


def evolve_full(kappa, gamma1, gamma2, delta, gp, gm, w1, w2,
                sigma0, d_diag, t0, h, n_sub, n_out):
    """Integrate with the full time-dependent drift."""
    dmat = np.diag(np.asarray(d_diag, dtype=float))
    out = np.empty((n_out + 1, 6, 6))
    out[0] = sigma = np.array(sigma0, dtype=float)
    step = 0
    for io in range(1, n_out + 1):
        for _ in range(n_sub):
            t = t0 + step * h
            m1 = _full_drift(kappa, gamma1, gamma2, delta, gp, gm, w1, w2, t)
            m2 = _full_drift(kappa, gamma1, gamma2, delta, gp, gm, w1, w2,
                             t + h / 2)
            m4 = _full_drift(kappa, gamma1, gamma2, delta, gp, gm, w1, w2,
                             t + h)
            sigma = _step_sigma(m1, m2, m4, sigma, h, dmat)
            step += 1
        out[io] = sigma
        if not np.all(np.isfinite(sigma)) or \
                np.max(np.abs(sigma)) > DIVERGENCE_LIMIT:
            return 1, out[:io + 1]
    return 0, out


def propagator_full(kappa, gamma1, gamma2, delta, gp, gm, w1, w2,
                    t0, h, n_steps):
    """RK4 propagator Pi(t0 + n_steps*h) of Pi' = M(t) Pi from Pi(t0) = I."""
    pi = np.eye(6)
    for step in range(n_steps):
        t = t0 + step * h
        m1 = _full_drift(kappa, gamma1, gamma2, delta, gp, gm, w1, w2, t)
        m2 = _full_drift(kappa, gamma1, gamma2, delta, gp, gm, w1, w2,
                         t + h / 2)
        m4 = _full_drift(kappa, gamma1, gamma2, delta, gp, gm, w1, w2, t + h)
        k1 = m1 @ pi
        k2 = m2 @ (pi + (h / 2) * k1)
        k3 = m2 @ (pi + (h / 2) * k2)
        k4 = m4 @ (pi + h * k3)
        pi = pi + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    return pi
