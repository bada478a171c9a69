# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: fixed-step RK4 for the 6x6 covariance ODE.

The full-drift integrator is the runtime bottleneck (1e8+ steps for the
long modulated trajectories), so everything runs on flat C arrays with the
drift's sparsity written out by hand.  Oscillation phasors advance by
complex recurrence and are resynchronized from libc trig every
RESYNC_INTERVAL steps to keep phase error at rounding level.
"""

import numpy as np

from libc.math cimport cos, sin, fabs, isfinite

COMPILED = True

DEF DIVERGENCE_LIMIT = 1e12
DEF RESYNC_INTERVAL = 4096


cdef struct Pars:
    double kappa, gamma1, gamma2, delta, gp, gm, w1, w2


cdef inline void full_entries(double gp, double gm,
                              double p1r, double p1i,
                              double p2r, double p2i,
                              double* ent) noexcept nogil:
    """Off-diagonal drift amplitudes (a, b, c, e, u, v, w, x) from phasors.

    p1 = exp(2i w1 t), p2 = exp(2i (w2+delta) t).
    """
    cdef double g1r = gp + gm * p1r
    cdef double g1i = gm * p1i
    cdef double g2r = gm + gp * p1r
    cdef double g2i = -gp * p1i
    cdef double p3r = p1r * p2r - p1i * p2i
    cdef double p3i = p1r * p2i + p1i * p2r
    cdef double p4r = p1r * p2r + p1i * p2i
    cdef double p4i = p1i * p2r - p1r * p2i
    cdef double g3r = gp * (1.0 + p3r) + gm * (p2r + p1r)
    cdef double g3i = gp * p3i + gm * (p2i + p1i)
    cdef double g4r = gm * (1.0 + p4r) + gp * (p2r + p1r)
    cdef double g4i = gm * p4i + gp * (p1i - p2i)
    ent[0] = g1i + g2i          # a
    ent[1] = g2r - g1r          # b
    ent[2] = g1i - g2i          # c
    ent[3] = -(g1r + g2r)       # e
    ent[4] = g3i + g4i          # u
    ent[5] = g4r - g3r          # v
    ent[6] = g3i - g4i          # w
    ent[7] = -(g3r + g4r)       # x


cdef inline void full_deriv(Pars* p, double* ent, double* dd,
                            double* s, double* k) noexcept nogil:
    """k = M s + (M s)^T + D with the structured full drift."""
    cdef double a = ent[0], b = ent[1], c = ent[2], e = ent[3]
    cdef double u = ent[4], v = ent[5], w = ent[6], x = ent[7]
    cdef double k2 = p.kappa * 0.5, d = p.delta
    cdef double m1 = p.gamma1 * 0.5, m2 = p.gamma2 * 0.5
    cdef double A[36]
    cdef int j
    for j in range(6):
        A[j]      = -k2 * s[j] + d * s[6 + j] + a * s[12 + j] + b * s[18 + j]
        A[6 + j]  = -d * s[j] - k2 * s[6 + j] + e * s[12 + j] - c * s[18 + j]
        A[12 + j] = c * s[j] + b * s[6 + j] - m1 * s[12 + j] \
            + u * s[24 + j] + v * s[30 + j]
        A[18 + j] = e * s[j] - a * s[6 + j] - m1 * s[18 + j] \
            + x * s[24 + j] - w * s[30 + j]
        A[24 + j] = w * s[12 + j] + v * s[18 + j] - m2 * s[24 + j] \
            - d * s[30 + j]
        A[30 + j] = x * s[12 + j] - u * s[18 + j] + d * s[24 + j] \
            - m2 * s[30 + j]
    cdef int i
    for i in range(6):
        for j in range(6):
            k[6 * i + j] = A[6 * i + j] + A[6 * j + i]
        k[6 * i + i] += dd[i]


cdef inline void const_deriv(double* M, double* dd,
                             double* s, double* k) noexcept nogil:
    """k = M s + (M s)^T + D with a dense constant drift."""
    cdef double A[36]
    cdef double acc
    cdef int i, j, l
    for i in range(6):
        for j in range(6):
            acc = 0.0
            for l in range(6):
                acc += M[6 * i + l] * s[6 * l + j]
            A[6 * i + j] = acc
    for i in range(6):
        for j in range(6):
            k[6 * i + j] = A[6 * i + j] + A[6 * j + i]
        k[6 * i + i] += dd[i]


cdef inline void mat_prop(Pars* p, double* ent,
                          double* s, double* k) noexcept nogil:
    """k = M s (propagator right-hand side, no transpose/diffusion term)."""
    cdef double a = ent[0], b = ent[1], c = ent[2], e = ent[3]
    cdef double u = ent[4], v = ent[5], w = ent[6], x = ent[7]
    cdef double k2 = p.kappa * 0.5, d = p.delta
    cdef double m1 = p.gamma1 * 0.5, m2 = p.gamma2 * 0.5
    cdef int j
    for j in range(6):
        k[j]      = -k2 * s[j] + d * s[6 + j] + a * s[12 + j] + b * s[18 + j]
        k[6 + j]  = -d * s[j] - k2 * s[6 + j] + e * s[12 + j] - c * s[18 + j]
        k[12 + j] = c * s[j] + b * s[6 + j] - m1 * s[12 + j] \
            + u * s[24 + j] + v * s[30 + j]
        k[18 + j] = e * s[j] - a * s[6 + j] - m1 * s[18 + j] \
            + x * s[24 + j] - w * s[30 + j]
        k[24 + j] = w * s[12 + j] + v * s[18 + j] - m2 * s[24 + j] \
            - d * s[30 + j]
        k[30 + j] = x * s[12 + j] - u * s[18 + j] + d * s[24 + j] \
            - m2 * s[30 + j]


cdef inline int bad_state(double* s) noexcept nogil:
    cdef int i
    for i in range(36):
        if not isfinite(s[i]) or fabs(s[i]) > DIVERGENCE_LIMIT:
            return 1
    return 0


def evolve_const(M, d_diag, sigma0, double t0, double h,
                 long n_sub, long n_out):
    """Constant-drift RK4; emits every n_sub steps.  Mirrors _pyref."""
    cdef double[:, ::1] Mv = np.ascontiguousarray(M, dtype=np.float64)
    cdef double[::1] dv = np.ascontiguousarray(d_diag, dtype=np.float64)
    out_arr = np.empty((n_out + 1, 6, 6))
    cdef double[:, :, ::1] out = out_arr
    cdef double s[36]
    cdef double k1[36]
    cdef double k2[36]
    cdef double k3[36]
    cdef double k4[36]
    cdef double tmp[36]
    cdef double* Mp = &Mv[0, 0]
    cdef double* dp = &dv[0]
    cdef long io, isub
    cdef int i
    cdef int status = 0
    s0 = np.ascontiguousarray(sigma0, dtype=np.float64).reshape(36)
    for i in range(36):
        s[i] = s0[i]
        out[0, i // 6, i % 6] = s[i]
    with nogil:
        for io in range(1, n_out + 1):
            for isub in range(n_sub):
                const_deriv(Mp, dp, s, k1)
                for i in range(36):
                    tmp[i] = s[i] + 0.5 * h * k1[i]
                const_deriv(Mp, dp, tmp, k2)
                for i in range(36):
                    tmp[i] = s[i] + 0.5 * h * k2[i]
                const_deriv(Mp, dp, tmp, k3)
                for i in range(36):
                    tmp[i] = s[i] + h * k3[i]
                const_deriv(Mp, dp, tmp, k4)
                for i in range(36):
                    s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i]
                                       + 2.0 * k3[i] + k4[i])
            for i in range(36):
                out[io, i // 6, i % 6] = s[i]
            if bad_state(s):
                status = 1
                break
    if status:
        return 1, out_arr[:io + 1]
    return 0, out_arr


def evolve_full(double kappa, double gamma1, double gamma2, double delta,
                double gp, double gm, double w1, double w2,
                sigma0, d_diag, double t0, double h, long n_sub, long n_out):
    """Full time-dependent drift RK4; emits every n_sub steps."""
    cdef Pars p
    p.kappa, p.gamma1, p.gamma2, p.delta = kappa, gamma1, gamma2, delta
    p.gp, p.gm, p.w1, p.w2 = gp, gm, w1, w2
    cdef double[::1] dv = np.ascontiguousarray(d_diag, dtype=np.float64)
    out_arr = np.empty((n_out + 1, 6, 6))
    cdef double[:, :, ::1] out = out_arr
    cdef double s[36]
    cdef double k1[36]
    cdef double k2[36]
    cdef double k3[36]
    cdef double k4[36]
    cdef double tmp[36]
    cdef double ent[8]
    cdef double* dp = &dv[0]
    cdef double wa = 2.0 * w1
    cdef double wb = 2.0 * (w2 + delta)
    # half-step rotation multipliers
    cdef double ear = cos(wa * h * 0.5), eai = sin(wa * h * 0.5)
    cdef double ebr = cos(wb * h * 0.5), ebi = sin(wb * h * 0.5)
    cdef double zar, zai, zbr, zbi          # phasors at current t
    cdef double har, hai, hbr, hbi          # phasors at t + h/2
    cdef double far, fai, fbr, fbi          # phasors at t + h
    cdef double t
    cdef long io, isub, step = 0
    cdef int i
    cdef int status = 0
    s0 = np.ascontiguousarray(sigma0, dtype=np.float64).reshape(36)
    for i in range(36):
        s[i] = s0[i]
        out[0, i // 6, i % 6] = s[i]
    zar, zai = 1.0, 0.0
    zbr, zbi = 1.0, 0.0
    with nogil:
        for io in range(1, n_out + 1):
            for isub in range(n_sub):
                if step % RESYNC_INTERVAL == 0:
                    t = t0 + step * h
                    zar, zai = cos(wa * t), sin(wa * t)
                    zbr, zbi = cos(wb * t), sin(wb * t)
                har = zar * ear - zai * eai
                hai = zar * eai + zai * ear
                hbr = zbr * ebr - zbi * ebi
                hbi = zbr * ebi + zbi * ebr
                far = har * ear - hai * eai
                fai = har * eai + hai * ear
                fbr = hbr * ebr - hbi * ebi
                fbi = hbr * ebi + hbi * ebr

                full_entries(gp, gm, zar, zai, zbr, zbi, ent)
                full_deriv(&p, ent, dp, s, k1)
                for i in range(36):
                    tmp[i] = s[i] + 0.5 * h * k1[i]
                full_entries(gp, gm, har, hai, hbr, hbi, ent)
                full_deriv(&p, ent, dp, tmp, k2)
                for i in range(36):
                    tmp[i] = s[i] + 0.5 * h * k2[i]
                full_deriv(&p, ent, dp, tmp, k3)
                for i in range(36):
                    tmp[i] = s[i] + h * k3[i]
                full_entries(gp, gm, far, fai, fbr, fbi, ent)
                full_deriv(&p, ent, dp, tmp, k4)
                for i in range(36):
                    s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i]
                                       + 2.0 * k3[i] + k4[i])
                zar, zai = far, fai
                zbr, zbi = fbr, fbi
                step += 1
            for i in range(36):
                out[io, i // 6, i % 6] = s[i]
            if bad_state(s):
                status = 1
                break
    if status:
        return 1, out_arr[:io + 1]
    return 0, out_arr


def propagator_full(double kappa, double gamma1, double gamma2, double delta,
                    double gp, double gm, double w1, double w2,
                    double t0, double h, long n_steps):
    """RK4 propagator of Pi' = M(t) Pi from the identity."""
    cdef Pars p
    p.kappa, p.gamma1, p.gamma2, p.delta = kappa, gamma1, gamma2, delta
    p.gp, p.gm, p.w1, p.w2 = gp, gm, w1, w2
    pi_arr = np.eye(6)
    cdef double[:, ::1] piv = pi_arr
    cdef double s[36]
    cdef double k1[36]
    cdef double k2[36]
    cdef double k3[36]
    cdef double k4[36]
    cdef double tmp[36]
    cdef double ent[8]
    cdef double wa = 2.0 * w1
    cdef double wb = 2.0 * (w2 + delta)
    cdef double t
    cdef long step
    cdef int i
    for i in range(36):
        s[i] = piv[i // 6, i % 6]
    with nogil:
        for step in range(n_steps):
            t = t0 + step * h
            full_entries(gp, gm, cos(wa * t), sin(wa * t),
                         cos(wb * t), sin(wb * t), ent)
            mat_prop(&p, ent, s, k1)
            for i in range(36):
                tmp[i] = s[i] + 0.5 * h * k1[i]
            full_entries(gp, gm, cos(wa * (t + 0.5 * h)),
                         sin(wa * (t + 0.5 * h)),
                         cos(wb * (t + 0.5 * h)),
                         sin(wb * (t + 0.5 * h)), ent)
            mat_prop(&p, ent, tmp, k2)
            for i in range(36):
                tmp[i] = s[i] + 0.5 * h * k2[i]
            mat_prop(&p, ent, tmp, k3)
            for i in range(36):
                tmp[i] = s[i] + h * k3[i]
            full_entries(gp, gm, cos(wa * (t + h)), sin(wa * (t + h)),
                         cos(wb * (t + h)), sin(wb * (t + h)), ent)
            mat_prop(&p, ent, tmp, k4)
            for i in range(36):
                s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    for i in range(36):
        piv[i // 6, i % 6] = s[i]
    return pi_arr
