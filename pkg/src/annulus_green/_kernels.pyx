# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled zonal series kernels; same contract as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, pow, isfinite, INFINITY

cnp.import_array()

DEF NEWTON = 0
DEF DR = 1
DEF H = 2
DEF DH_R = 3
DEF DH_RHO = 4

cdef double EPS = 2.220446049250313e-16
cdef double TAIL_REL = 1e-6
cdef long TAIL_CAP = 200000


cdef struct Setup:
    double term0
    double r1, r2, r3, r4
    double ax, ay, axy
    double pre
    double q
    int inner


cdef struct Powers:
    double g1, g2, g3, g4
    double gs_prev
    double ap


cdef inline void _setup(int kind, double n_dim, double a, double omega,
                        double rho, double r, double c0, Setup* su) noexcept nogil:
    cdef double nm2 = n_dim - 2.0
    cdef double hi, lo, a2, pr, an
    su.inner = 0
    su.ax = 0.0
    su.ay = 0.0
    su.axy = 0.0
    su.r2 = 0.0
    su.r3 = 0.0
    su.r4 = 0.0
    if kind == NEWTON:
        hi = rho if rho > r else r
        lo = r if rho > r else rho
        su.r1 = lo / hi
        su.pre = pow(hi, -nm2)
        su.term0 = su.pre
        su.q = su.r1
    elif kind == DR:
        if r < rho:
            su.inner = 1
            su.r1 = r / rho
            su.pre = 1.0 / (omega * nm2 * pow(rho, nm2 + 1.0))
            su.term0 = 0.0
        else:
            su.r1 = rho / r
            su.pre = -1.0 / (omega * nm2 * pow(r, nm2 + 1.0))
            su.term0 = -1.0 / (omega * pow(r, nm2 + 1.0))
        su.q = su.r1
    else:
        a2 = a * a
        pr = rho * r
        su.r1 = pr
        su.r2 = a2 * r / rho
        su.r3 = a2 * rho / r
        su.r4 = a2 / pr
        an = pow(a, nm2)
        su.ax = an * pow(rho, -nm2)
        su.ay = an * pow(r, -nm2)
        su.axy = an * pow(pr, -nm2)
        su.q = pr if pr > su.r4 else su.r4
        su.pre = 1.0 / (nm2 * omega)
        if kind == H:
            su.term0 = c0 * pow(r, -nm2)
        elif kind == DH_R:
            su.term0 = -nm2 * c0 * pow(r, -nm2 - 1.0)
        else:
            su.term0 = 0.0


cdef inline void _reset(Powers* pw, double a, double n_dim) noexcept nogil:
    pw.g1 = 1.0
    pw.g2 = 1.0
    pw.g3 = 1.0
    pw.g4 = 1.0
    pw.gs_prev = 1.0
    pw.ap = pow(a, n_dim - 2.0)


cdef inline void _step(Powers* pw, Setup* su, double a) noexcept nogil:
    pw.gs_prev = pw.g1
    pw.g1 = pw.g1 * su.r1
    pw.g2 = pw.g2 * su.r2
    pw.g3 = pw.g3 * su.r3
    pw.g4 = pw.g4 * su.r4
    pw.ap = pw.ap * (a * a)


cdef inline double _coef(int kind, double m, double nm2, Powers* pw, Setup* su,
                         double rho, double r) noexcept nogil:
    cdef double k = m + nm2
    cdef double denom, br
    if kind == NEWTON:
        return su.pre * pw.g1
    if kind == DR:
        if su.inner:
            return su.pre * m * pw.gs_prev
        return su.pre * k * pw.g1
    denom = su.pre / (pw.ap - 1.0)
    if kind == H:
        br = (k / m) * pw.g1 + su.ax * pw.g2 + su.ay * pw.g3 + (m / k) * su.axy * pw.g4
        return denom * br
    if kind == DH_R:
        br = k * pw.g1 + m * su.ax * pw.g2 - k * su.ay * pw.g3 - m * su.axy * pw.g4
        return denom * br / r
    br = k * pw.g1 - k * su.ax * pw.g2 + m * su.ay * pw.g3 - m * su.axy * pw.g4
    return denom * br / rho


cdef void _one(int kind, double n_dim, double a, double omega, double rho,
               double r, double t, long max_order, double rel_tol, int adaptive,
               double c0, double* out_value, long* out_order, double* out_tail,
               double* out_round, int* out_cert) noexcept nogil:
    cdef Setup su
    cdef Powers pw
    cdef double lam = 0.5 * (n_dim - 2.0)
    cdef double nm2 = n_dim - 2.0
    cdef double s, comp, env_sum, tt, cm, c1, c2, dm, d1, coef, term, env
    cdef double tail, prev_env, last_env, last_ratio, ratio, closing
    cdef long m, order, streak, mmax
    cdef int cert, done

    if t > 1.0:
        t = 1.0
    elif t < -1.0:
        t = -1.0
    _setup(kind, n_dim, a, omega, rho, r, c0, &su)
    cert = su.q < 1.0
    s = su.term0
    comp = 0.0
    env_sum = fabs(su.term0)
    order = 0
    streak = 0
    _reset(&pw, a, n_dim)
    c2 = 0.0
    c1 = 1.0
    d1 = 1.0
    m = 0
    while m < max_order:
        m += 1
        if m == 1:
            cm = 2.0 * lam * t
            dm = 2.0 * lam
        else:
            cm = (2.0 * t * (m + lam - 1.0) * c1 - (m + 2.0 * lam - 2.0) * c2) / m
            dm = d1 * (m + 2.0 * lam - 1.0) / m
        c2 = c1
        c1 = cm
        d1 = dm
        _step(&pw, &su, a)
        coef = _coef(kind, <double>m, nm2, &pw, &su, rho, r)
        term = coef * cm
        env = fabs(coef) * dm
        if not isfinite(term):
            cert = 0
            break
        tt = s + term
        if fabs(s) >= fabs(term):
            comp += (s - tt) + term
        else:
            comp += (term - tt) + s
        s = tt
        env_sum += env
        order = m
        if adaptive:
            if env <= rel_tol * fabs(s + comp):
                streak += 1
            else:
                streak = 0
            if streak >= 3:
                break

    out_value[0] = s + comp
    out_order[0] = order
    out_round[0] = 2.0 * EPS * env_sum
    out_cert[0] = cert
    if not cert:
        out_tail[0] = INFINITY
        return

    # the main loop left pw and d1 at m == order; continue from there
    dm = d1
    tail = 0.0
    prev_env = 0.0
    last_env = 0.0
    last_ratio = su.q
    done = 0
    mmax = order + TAIL_CAP
    m = order
    while m < mmax:
        m += 1
        if m == 1:
            dm = 2.0 * lam
        else:
            dm = dm * (m + 2.0 * lam - 1.0) / m
        _step(&pw, &su, a)
        env = fabs(_coef(kind, <double>m, nm2, &pw, &su, rho, r)) * dm
        tail += env
        if prev_env > 0.0:
            ratio = env / prev_env
        else:
            ratio = su.q
        last_ratio = ratio
        last_env = env
        prev_env = env
        if m > order + 1 and ratio < 1.0 and (env <= TAIL_REL * tail or env == 0.0):
            done = 1
            break
    if not done:
        out_tail[0] = INFINITY
        return
    closing = last_ratio if last_ratio < 1.0 else su.q
    if closing > 1.0 - EPS:
        closing = 1.0 - EPS
    out_tail[0] = tail + last_env * closing / (1.0 - closing)


def series_eval(int kind, int n_dim, double a, double omega, rho, r, t,
                long max_order, double rel_tol, bint adaptive, double c0=0.0):
    rho_a = np.array(rho, dtype=float, ndmin=1)
    r_a = np.array(r, dtype=float, ndmin=1)
    t_a = np.array(t, dtype=float, ndmin=1)
    # copy: broadcast views are read-only
    rho_a, r_a, t_a = (np.array(v, dtype=float, order="C")
                       for v in np.broadcast_arrays(rho_a, r_a, t_a))
    cdef Py_ssize_t n = rho_a.size
    cdef double[::1] rv = rho_a.reshape(-1)
    cdef double[::1] yv = r_a.reshape(-1)
    cdef double[::1] tv = t_a.reshape(-1)
    value = np.empty(n)
    order = np.empty(n, dtype=np.int64)
    tail = np.empty(n)
    rounding = np.empty(n)
    cert = np.empty(n, dtype=np.intc)
    cdef double[::1] vv = value
    cdef long[::1] ov = order
    cdef double[::1] tl = tail
    cdef double[::1] rd = rounding
    cdef int[::1] cv = cert
    cdef Py_ssize_t i
    cdef int ad = adaptive
    with nogil:
        for i in range(n):
            _one(kind, <double>n_dim, a, omega, rv[i], yv[i], tv[i], max_order,
                 rel_tol, ad, c0, &vv[i], &ov[i], &tl[i], &rd[i], &cv[i])
    shape = rho_a.shape
    return (value.reshape(shape), order.reshape(shape), tail.reshape(shape),
            rounding.reshape(shape), cert.astype(bool).reshape(shape))


def gegenbauer_table(long m_max, double lam, t):
    t_a = np.ascontiguousarray(np.array(t, dtype=float, ndmin=1))
    cdef Py_ssize_t n = t_a.size
    out = np.empty((m_max + 1, n))
    cdef double[:, ::1] o = out
    cdef double[::1] tv = t_a
    cdef Py_ssize_t i
    cdef long m
    with nogil:
        for i in range(n):
            o[0, i] = 1.0
            if m_max >= 1:
                o[1, i] = 2.0 * lam * tv[i]
            for m in range(2, m_max + 1):
                o[m, i] = (2.0 * tv[i] * (m + lam - 1.0) * o[m - 1, i]
                           - (m + 2.0 * lam - 2.0) * o[m - 2, i]) / m
    return out
