"""Gegenbauer polynomials and zonal spherical harmonics.

The production route for zonal harmonics goes through Gegenbauer
polynomials,

    Z_m(x', y') = (2m + N - 2) / (N - 2) * C_m^lam(x' . y'),   lam = (N - 2) / 2,

where C_m^lam is the coefficient of r^m in (1 - 2 r t + r^2)^(-lam). The
explicit alternating sum over powers of (x . xi) and |x|^2 is kept as an
independent cross-check only; it cancels badly for large m.
"""

import math
from fractions import Fraction

import numpy as np

from . import _backend
from .errors import DomainError


def surface_area(n_dim):
    """Area of the unit sphere S^(N-1) in R^N, 2 pi^(N/2) / Gamma(N/2)."""
    if int(n_dim) != n_dim or n_dim < 3:
        raise DomainError(f"dimension must be an integer >= 3, got {n_dim}")
    n_dim = int(n_dim)
    return 2.0 * math.pi ** (n_dim / 2.0) / math.gamma(n_dim / 2.0)


def unit_direction(v):
    """Return ``v / |v|`` as a float array; raise on the zero vector."""
    v = np.asarray(v, dtype=float)
    nrm = np.linalg.norm(v)
    if not nrm > 0.0 or not np.isfinite(nrm):
        raise DomainError("direction undefined for a zero or non-finite vector")
    return v / nrm


def _check_params(m, lam, t):
    if int(m) != m or m < 0:
        raise DomainError(f"order must be a non-negative integer, got {m}")
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    if np.any(np.abs(np.asarray(t, dtype=float)) > 1.0 + 1e-12):
        raise DomainError("Gegenbauer argument must lie in [-1, 1]")


def gegenbauer(m, lam, t):
    """C_m^lam(t) by the three-term recurrence.

    ``t`` may be a scalar or an array; the result has the same shape.
    """
    _check_params(m, lam, t)
    t_arr = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    table = _backend.gegenbauer_table(int(m), float(lam), t_arr.reshape(-1))
    out = table[int(m)].reshape(t_arr.shape)
    return float(out) if out.ndim == 0 else out


def gegenbauer_all(m_max, lam, t):
    """Rows C_0 .. C_{m_max} evaluated at the points ``t``."""
    _check_params(m_max, lam, t)
    t_arr = np.clip(np.asarray(t, dtype=float).reshape(-1), -1.0, 1.0)
    return _backend.gegenbauer_table(int(m_max), float(lam), t_arr)


def gegenbauer_oracle_series(m_max, lam, t):
    """Coefficients of r^0..r^m_max of (1 - r(2t - r))^(-lam), exactly.

    Expands the generalised binomial series sum_k (lam)_k / k! u^k with
    u = 2 t r - r^2, convolving truncated polynomials in rational
    arithmetic. ``lam`` and ``t`` are converted to exact fractions (a float
    ``t`` is taken at its exact binary value). Returns a list of Fractions.
    """
    lam = Fraction(lam)
    t = Fraction(t)
    u = [Fraction(0)] * (m_max + 1)
    if m_max >= 1:
        u[1] = 2 * t
    if m_max >= 2:
        u[2] = Fraction(-1)
    coeffs = [Fraction(0)] * (m_max + 1)
    coeffs[0] = Fraction(1)
    power = [Fraction(0)] * (m_max + 1)
    power[0] = Fraction(1)
    binom = Fraction(1)
    for k in range(1, m_max + 1):
        # power <- power * u, truncated; u^k starts at degree k
        new = [Fraction(0)] * (m_max + 1)
        for i in range(k - 1, m_max + 1):
            pi = power[i]
            if pi == 0:
                continue
            if i + 1 <= m_max:
                new[i + 1] += pi * u[1]
            if i + 2 <= m_max:
                new[i + 2] += pi * u[2]
        power = new
        binom = binom * (lam + k - 1) / k
        for i in range(k, m_max + 1):
            coeffs[i] += binom * power[i]
    return coeffs


def gegenbauer_oracle(m, lam, t):
    """Exact-arithmetic oracle for C_m^lam(t), returned as a float."""
    _check_params(m, lam, t)
    return float(gegenbauer_oracle_series(int(m), lam, t)[int(m)])


def zonal(m, n_dim, x_dir, y_dir):
    """Zonal harmonic Z_m(x', y') of degree m on S^(N-1), via Gegenbauer."""
    if n_dim < 3:
        raise DomainError("zonal harmonics need N >= 3 on this route")
    if m == 0:
        return 1.0
    t = float(np.dot(unit_direction(x_dir), unit_direction(y_dir)))
    t = min(1.0, max(-1.0, t))
    lam = 0.5 * (n_dim - 2)
    return (2 * m + n_dim - 2) / (n_dim - 2) * gegenbauer(m, lam, t)


def zonal_of_dot(m, n_dim, t):
    """Z_m as a function of the cosine ``t`` (array-friendly)."""
    lam = 0.5 * (n_dim - 2)
    return (2 * m + n_dim - 2) / (n_dim - 2) * gegenbauer(m, lam, np.clip(t, -1.0, 1.0))


def _explicit_coefficient(m, k, n_dim):
    # N(N+2)...(N+2m-2k-4) has m-k-1 factors; empty product is 1
    prod = 1
    for j in range(m - k - 1):
        prod *= n_dim + 2 * j
    return Fraction(prod, 2 ** k * math.factorial(k) * math.factorial(m - 2 * k))


def zonal_explicit(m, n_dim, x, xi):
    """Finite alternating-sum form of Z_m(x, xi) for x in R^N, xi on the sphere.

    The sum runs over 0 <= k <= floor(m/2): the factorial (m - 2k)! has no
    meaning beyond that.
    """
    if m == 0:
        return 1.0
    if m < 0 or n_dim < 2:
        raise DomainError("need m >= 0 and N >= 2")
    x = np.asarray(x, dtype=float)
    xi = unit_direction(xi)
    # the alternating sum cancels heavily; evaluate it exactly on the
    # floating-point inputs and round once
    dot = Fraction(float(np.dot(x, xi)))
    sq = Fraction(float(np.dot(x, x)))
    total = Fraction(0)
    for k in range(m // 2 + 1):
        c = _explicit_coefficient(m, k, n_dim)
        total += (-1) ** k * c * dot ** (m - 2 * k) * sq ** k
    return float((n_dim + 2 * m - 2) * total)


def zonal_diagonal(m, n_dim):
    """Z_m(xi, xi) = (2m+N-2)/(N-2) * binom(m+N-3, m).

    C_m^lam(1) is the r^m coefficient of (1 - r)^(-2 lam), i.e. the rising
    factorial (N-2)_m / m!.
    """
    if m < 0 or n_dim < 3:
        raise DomainError("need m >= 0 and N >= 3")
    if m == 0:
        return 1.0
    return (2 * m + n_dim - 2) / (n_dim - 2) * math.comb(m + n_dim - 3, m)
