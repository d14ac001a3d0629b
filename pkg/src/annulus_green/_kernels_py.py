"""Pure numpy implementation of the zonal series kernels.

Used when the compiled extension is unavailable (or ANNULUS_GREEN_PURE=1).
Every point is summed independently with the same operation order as the
compiled kernel, so batching never changes a per-point result.

Series kinds (``term_m = coef_m * C_m^lam(t)``, envelope ``|coef_m| C_m^lam(1)``):

NEWTON    1/|x-y|^(N-2), branch by comparing rho=|x| and r=|y|
DR        d/dr of the fundamental solution, r=|y|
H         regular part of the Neumann Green function
DH_R      d/dr of the regular part
DH_RHO    d/drho of the regular part
"""

import numpy as np

NEWTON, DR, H, DH_R, DH_RHO = 0, 1, 2, 3, 4

EPS = np.finfo(float).eps
TAIL_REL = 1e-6
TAIL_CAP = 200000


def _setup(kind, n_dim, a, omega, rho, r, c0):
    """Per-point constants: m=0 term, geometric ratios and prefactors."""
    nm2 = n_dim - 2.0
    ones = np.ones_like(rho)
    if kind == NEWTON:
        hi = np.maximum(rho, r)
        lo = np.minimum(rho, r)
        s = lo / hi
        pre = hi ** (-nm2)
        term0 = pre.copy()
        ratios = (s,)
        alphas = ()
        q = s
    elif kind == DR:
        inner = r < rho
        s = np.where(inner, r / rho, rho / r)
        pre = np.where(inner, 1.0 / (omega * nm2 * rho ** (nm2 + 1.0)),
                       -1.0 / (omega * nm2 * r ** (nm2 + 1.0)))
        term0 = np.where(inner, 0.0, -1.0 / (omega * r ** (nm2 + 1.0)))
        ratios = (s,)
        alphas = (inner,)
        q = s
    else:
        a2 = a * a
        pr = rho * r
        ratios = (pr, a2 * r / rho, a2 * rho / r, a2 / pr)
        an = a ** nm2
        alphas = (an * rho ** (-nm2), an * r ** (-nm2), an * pr ** (-nm2))
        q = np.maximum(pr, a2 / pr)
        pre = ones / (nm2 * omega)
        if kind == H:
            term0 = c0 * r ** (-nm2)
        elif kind == DH_R:
            term0 = -nm2 * c0 * r ** (-nm2 - 1.0)
        else:
            term0 = np.zeros_like(rho)
    return term0, ratios, alphas, pre, q


class _State:
    """Running geometric powers; one multiplication per order."""

    def __init__(self, kind, ratios, n_dim, a):
        self.kind = kind
        self.ratios = ratios
        self.g = [np.ones_like(ratios[0]) for _ in ratios]
        self.gs_prev = np.ones_like(ratios[0])
        self.nm2 = n_dim - 2.0
        self.ap = np.full_like(ratios[0], a ** (n_dim - 2.0))
        self.a2 = a * a

    def step(self):
        # advance to the next order; gs_prev keeps s^(m-1) for DR inner
        self.gs_prev = self.g[0]
        self.g = [g * q for g, q in zip(self.g, self.ratios)]
        self.ap = self.ap * self.a2

    def take(self, sel):
        self.ratios = tuple(v[sel] for v in self.ratios)
        self.g = [v[sel] for v in self.g]
        self.gs_prev = self.gs_prev[sel]
        self.ap = self.ap[sel]


def _take(arrays, sel):
    return tuple(v[sel] for v in arrays)


def _coef(kind, m, st, alphas, pre, rho, r):
    nm2 = st.nm2
    k = m + nm2
    if kind == NEWTON:
        return pre * st.g[0]
    if kind == DR:
        inner = alphas[0]
        return np.where(inner, pre * m * st.gs_prev, pre * k * st.g[0])
    g1, g2, g3, g4 = st.g
    ax, ay, axy = alphas
    denom = pre / (st.ap - 1.0)
    if kind == H:
        br = (k / m) * g1 + ax * g2 + ay * g3 + (m / k) * axy * g4
        return denom * br
    if kind == DH_R:
        br = k * g1 + m * ax * g2 - k * ay * g3 - m * axy * g4
        return denom * br / r
    br = k * g1 - k * ax * g2 + m * ay * g3 - m * axy * g4
    return denom * br / rho


def series_eval(kind, n_dim, a, omega, rho, r, t, max_order, rel_tol,
                adaptive, c0=0.0):
    """Evaluate a zonal series at every point.

    Returns ``(value, order, tail, rounding, certified)`` arrays, where
    ``order`` is the highest order retained, ``tail`` bounds the discarded
    remainder (``inf`` without a convergence certificate) and ``rounding``
    estimates the floating-point error of the retained sum.
    """
    rho = np.array(rho, dtype=float, ndmin=1)
    r = np.array(r, dtype=float, ndmin=1)
    t = np.clip(np.array(t, dtype=float, ndmin=1), -1.0, 1.0)
    rho, r, t = (np.ascontiguousarray(v) for v in np.broadcast_arrays(rho, r, t))
    shape = rho.shape
    rho, r, t = rho.ravel(), r.ravel(), t.ravel()
    lam = 0.5 * (n_dim - 2.0)

    term0, ratios, alphas, pre, q = _setup(kind, n_dim, a, omega, rho, r, c0)
    certified = q < 1.0

    s = term0.copy()
    comp = np.zeros_like(s)
    env_sum = np.abs(term0)
    order = np.zeros(rho.shape, dtype=np.int64)

    # working set; finished points are written back and dropped
    idx = np.arange(rho.size)
    w_rho, w_r, w_t, w_pre = rho, r, t, pre
    w_alphas = alphas
    w_s, w_comp, w_env, w_cert = s.copy(), comp.copy(), env_sum.copy(), certified.copy()
    w_order = order.copy()
    streak = np.zeros(rho.shape, dtype=np.int64)
    active = np.ones(rho.shape, dtype=bool)
    st = _State(kind, ratios, n_dim, a)
    c2 = np.zeros_like(t)
    c1 = np.ones_like(t)
    d1 = 1.0
    m = 0

    def flush(sel):
        j = idx[sel]
        s[j], comp[j], env_sum[j] = w_s[sel], w_comp[sel], w_env[sel]
        certified[j], order[j] = w_cert[sel], w_order[sel]

    while m < max_order and active.any():
        m += 1
        if m == 1:
            cm = 2.0 * lam * w_t
            dm = 2.0 * lam
        else:
            cm = (2.0 * w_t * (m + lam - 1.0) * c1 - (m + 2.0 * lam - 2.0) * c2) / m
            dm = d1 * (m + 2.0 * lam - 1.0) / m
        c2, c1, d1 = c1, cm, dm
        st.step()
        coef = _coef(kind, m, st, w_alphas, w_pre, w_rho, w_r)
        term = coef * cm
        env = np.abs(coef) * dm

        bad = ~np.isfinite(term)
        w_cert = np.where(active & bad, False, w_cert)
        active &= ~bad

        tt = w_s + term
        big = np.abs(w_s) >= np.abs(term)
        dc = np.where(big, (w_s - tt) + term, (term - tt) + w_s)
        w_s = np.where(active, tt, w_s)
        w_comp = np.where(active, w_comp + dc, w_comp)
        w_env = np.where(active, w_env + env, w_env)
        w_order = np.where(active, m, w_order)
        if adaptive:
            small = env <= rel_tol * np.abs(w_s + w_comp)
            streak = np.where(small, streak + 1, 0)
            active &= streak < 3
        n_live = int(active.sum())
        if 0 < n_live <= active.size // 2:
            flush(~active)
            keep = active
            idx = idx[keep]
            w_rho, w_r, w_t, w_pre = _take((w_rho, w_r, w_t, w_pre), keep)
            w_alphas = _take(w_alphas, keep)
            w_s, w_comp, w_env, w_cert, w_order, streak, c1, c2 = _take(
                (w_s, w_comp, w_env, w_cert, w_order, streak, c1, c2), keep)
            st.take(keep)
            active = np.ones(idx.size, dtype=bool)
    flush(np.ones(idx.size, dtype=bool))

    value = s + comp
    rounding = 2.0 * EPS * env_sum
    tail = _tail(kind, n_dim, a, lam, ratios, alphas, pre, rho, r, order,
                 certified, q)
    return (value.reshape(shape), order.reshape(shape), tail.reshape(shape),
            rounding.reshape(shape), certified.reshape(shape))


def _tail(kind, n_dim, a, lam, ratios, alphas, pre, rho, r, order, certified, q):
    """Sum envelopes beyond ``order`` until negligible, then close geometrically."""
    out = np.full(rho.shape, np.inf)
    idx = np.flatnonzero(certified)
    if idx.size == 0:
        return out
    ratios, alphas = _take(ratios, idx), _take(alphas, idx)
    pre, rho, r, order, q = _take((pre, rho, r, order, q), idx)
    st = _State(kind, ratios, n_dim, a)
    tail = np.zeros(idx.size)
    todo = np.ones(idx.size, dtype=bool)
    prev_env = np.zeros(idx.size)
    last_env = np.zeros(idx.size)
    last_ratio = np.array(q, dtype=float)
    d = 1.0
    m = 0
    mmax = int(order.max()) + TAIL_CAP

    def close(sel, capped):
        closing = np.where(last_ratio[sel] < 1.0, last_ratio[sel], q[sel])
        c = last_env[sel] * closing / (1.0 - np.minimum(closing, 1.0 - EPS))
        # still running at the cap: no certificate
        out[idx[sel]] = np.where(capped, np.inf, tail[sel] + c)

    while todo.any() and m < mmax:
        m += 1
        d = 2.0 * lam if m == 1 else d * (m + 2.0 * lam - 1.0) / m
        st.step()
        past = m > order
        if not past.any():
            continue
        env = np.abs(_coef(kind, m, st, alphas, pre, rho, r)) * d
        upd = todo & past
        tail = np.where(upd, tail + env, tail)
        ratio = np.where(prev_env > 0, env / np.where(prev_env > 0, prev_env, 1.0), q)
        last_ratio = np.where(upd, ratio, last_ratio)
        last_env = np.where(upd, env, last_env)
        prev_env = np.where(past, env, prev_env)
        first = m == order + 1
        done = upd & ~first & (ratio < 1.0) & ((env <= TAIL_REL * tail) | (env == 0.0))
        todo &= ~done
        n_live = int(todo.sum())
        if 0 < n_live <= todo.size // 2:
            close(~todo, False)
            keep = todo
            idx = idx[keep]
            alphas = _take(alphas, keep)
            pre, rho, r, order, q, tail, prev_env, last_env, last_ratio = _take(
                (pre, rho, r, order, q, tail, prev_env, last_env, last_ratio), keep)
            st.take(keep)
            todo = np.ones(idx.size, dtype=bool)
    close(np.ones(idx.size, dtype=bool), todo & (m >= mmax))
    return out


def gegenbauer_table(m_max, lam, t):
    """C_0..C_{m_max} at each t by the three-term recurrence; shape (m_max+1, len(t))."""
    t = np.array(t, dtype=float, ndmin=1)
    out = np.empty((m_max + 1, t.size))
    out[0] = 1.0
    if m_max >= 1:
        out[1] = 2.0 * lam * t
    for m in range(2, m_max + 1):
        out[m] = (2.0 * t * (m + lam - 1.0) * out[m - 1]
                  - (m + 2.0 * lam - 2.0) * out[m - 2]) / m
    return out
