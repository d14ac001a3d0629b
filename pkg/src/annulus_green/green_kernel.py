"""Green function of the shell {a < |x| < 1} in R^N (N >= 3) with Neumann boundary data.

G(x, y) = Gamma(x - y) - H(x, y) with Gamma(z) = 1 / (omega (N-2) |z|^(N-2)) and

    H(x, y) = (1/omega) sum_{m>=1} [A_m(rho) r^m + B_m(rho) r^-(m+N-2)] Z_m(x', y')
              + C_0 r^-(N-2),                       rho = |x|, r = |y|.

The regular-part series is summed in an expanded form where every order
contributes four geometric pieces with ratios rho r, a^2 r / rho,
a^2 rho / r and a^2 / (rho r); these stay bounded on the closed annulus,
so no negative power of a radius is ever formed explicitly. The series
converges when a^2 < rho r < 1.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import integrate

from . import _backend
from .errors import (ConditioningWarning, DivergenceError, DomainError,
                     SingularityError, AccuracyWarning)
from .harmonics import surface_area
from .kernel_expansion import SeriesBatch, Truncation, as_point, run_series

RECOMMENDED_MAX_A = 0.95
RADIUS_SLACK = 1e-12


@dataclass(frozen=True)
class Annulus:
    """The shell a < |x| < 1 in R^N.

    ``c0_override`` replaces C_0 everywhere it is used; it exists only for
    fault-injection tests. ``warn=False`` silences the conditioning warning
    for shells built internally from one the caller was already warned about.
    """

    dim: int
    a: float
    c0_override: float | None = field(default=None, repr=False, compare=False)
    warn: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 3:
            raise DomainError(f"dimension must be an integer >= 3, got {self.dim}")
        if not 0.0 < self.a < 1.0:
            raise DomainError("inner radius must lie in (0,1)")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "a", float(self.a))
        if self.a > RECOMMENDED_MAX_A and self.warn:
            warnings.warn(
                f"inner radius {self.a} > {RECOMMENDED_MAX_A}: 1/(a^(2m+N-2) - 1) "
                "is ill-conditioned and series converge slowly near the boundary",
                ConditioningWarning, stacklevel=3)

    @property
    def omega(self):
        return surface_area(self.dim)

    @property
    def boundary_measure(self):
        return self.omega * (1.0 + self.a ** (self.dim - 1))

    @property
    def volume(self):
        return self.omega * (1.0 - self.a ** self.dim) / self.dim

    @property
    def c0(self):
        if self.c0_override is not None:
            return self.c0_override
        return coeff_C0(self)

    @property
    def well_conditioned(self):
        return self.a <= RECOMMENDED_MAX_A

    def contains(self, radius, closed=True):
        if closed:
            return self.a - RADIUS_SLACK <= radius <= 1.0 + RADIUS_SLACK
        return self.a < radius < 1.0


class CoefficientRow(NamedTuple):
    m: int
    A: float
    B: float
    rho: float


class GreenEvaluation(NamedTuple):
    green: float
    regular_part: float
    singular_part: float
    tail_estimate: float
    terms_used: int
    reliable: bool = True


class SymmetryDefect(NamedTuple):
    measured: float
    predicted: float
    bound: float


# -- coefficients -----------------------------------------------------------

def coeff_C0(dom):
    """C_0 = a^(N-1) / ((N-2) omega (1 + a^(N-1)))."""
    an1 = dom.a ** (dom.dim - 1)
    return an1 / ((dom.dim - 2) * dom.omega * (1.0 + an1))


def _check_rho(dom, rho):
    if not dom.contains(rho):
        raise DomainError(f"radius {rho} outside [{dom.a}, 1]")


def coeff_A(m, dom, rho):
    """A_m(rho) = (m+N-2)/(m(2m+N-2)) rho^m/(a^p - 1) [1 + m/(m+N-2) (a/rho)^p], p = 2m+N-2."""
    _check_rho(dom, rho)
    n, a = dom.dim, dom.a
    k, p = m + n - 2, 2 * m + n - 2
    ap = a ** p
    if ap == 0.0:
        # a^p underflowed: the denominator is exactly -1
        return -(k / (m * p)) * rho ** m * (1.0 + (m / k) * (a / rho) ** p)
    return (k / (m * p)) * rho ** m / (ap - 1.0) * (1.0 + (m / k) * (a / rho) ** p)


def coeff_B(m, dom, rho):
    """B_m(rho) = a^p/(2m+N-2) rho^m/(a^p - 1) [1 + m/(m+N-2) rho^-p].

    Evaluated as rho^m [a^p + m/(m+N-2) (a/rho)^p] / (p (a^p - 1)) so the
    negative power of rho never appears on its own.
    """
    _check_rho(dom, rho)
    n, a = dom.dim, dom.a
    k, p = m + n - 2, 2 * m + n - 2
    ap = a ** p
    return rho ** m * (ap + (m / k) * (a / rho) ** p) / (p * (ap - 1.0))


def coeffs_via_cramer(m, dom, rho):
    """Solve the per-order boundary system directly for (A_m, B_m).

    Outer sphere:  m A - (m+N-2) B = -(m+N-2)/(2m+N-2) rho^m
    Inner sphere:  m a^(m-1) A - (m+N-2) a^-(m+N-1) B = m a^(m-1)/(2m+N-2) rho^-(m+N-2)
    """
    _check_rho(dom, rho)
    n, a = dom.dim, dom.a
    k, p = m + n - 2, 2 * m + n - 2
    mat = np.array([[m, -k], [m * a ** (m - 1), -k * a ** (-(m + n - 1))]], dtype=float)
    rhs = np.array([-(k / p) * rho ** m, (m * a ** (m - 1) / p) * rho ** (-k)])
    det = m * k * (a ** (m - 1) - a ** (-(n + m - 1)))
    if det == 0.0 or not np.isfinite(det):
        raise RuntimeError(f"boundary system singular at m={m}")
    A, B = np.linalg.solve(mat, rhs)
    return float(A), float(B)


def boundary_system_residual(m, dom, rho, A, B):
    """Relative residuals of both boundary equations for given (A, B)."""
    n, a = dom.dim, dom.a
    k, p = m + n - 2, 2 * m + n - 2
    lhs1, rhs1 = m * A - k * B, -(k / p) * rho ** m
    t1, t2 = m * a ** (m - 1) * A, k * a ** (-(m + n - 1)) * B
    rhs2 = (m * a ** (m - 1) / p) * rho ** (-k)
    r1 = abs(lhs1 - rhs1) / max(abs(m * A) + abs(k * B) + abs(rhs1), 1e-300)
    r2 = abs(t1 - t2 - rhs2) / max(abs(t1) + abs(t2) + abs(rhs2), 1e-300)
    return r1, r2


def coefficient_table(dom, rho, m_max):
    return [CoefficientRow(m, coeff_A(m, dom, rho), coeff_B(m, dom, rho), rho)
            for m in range(1, m_max + 1)]


# -- regular part and Green function ----------------------------------------

def _check_point(dom, p, what="point"):
    if p.dim != dom.dim:
        raise DomainError(f"{what} has {p.dim} coordinates, expected N = {dom.dim}")
    if not dom.contains(p.radius):
        raise DomainError(f"{what} radius {p.radius} outside [{dom.a}, 1]")


def _cos_batch(x_dir, ys):
    rad = np.linalg.norm(ys, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = ys @ x_dir / rad
    return rad, np.clip(np.nan_to_num(t, nan=1.0), -1.0, 1.0)


def regular_part_batch(x, ys, dom, tr=Truncation(), kind=None):
    """Regular part H(x, y_i) (or one of its radial derivatives) for many y.

    No domain check is made here; callers validate the points first.
    """
    x = as_point(x)
    ys = np.atleast_2d(np.asarray(ys, dtype=float))
    rad, t = _cos_batch(x.direction, ys)
    kind = _backend.H if kind is None else kind
    return run_series(kind, dom.dim, dom.a, x.radius, rad, t, tr, dom.c0)


def regular_part_polar(dom, rho, r, t, tr=Truncation(), kind=None):
    """Regular part as a function of (|x|, |y|, x'.y'); all array-like."""
    kind = _backend.H if kind is None else kind
    return run_series(kind, dom.dim, dom.a, rho, r, t, tr, dom.c0)


def regular_part(x, y, dom, tr=Truncation()):
    """H(x, y) as a truncated series with a tail estimate.

    Outside the convergence region a^2 < |x||y| < 1 the value is still
    summed to ``tr.max_order`` but flagged ``reliable=False``.
    """
    x, y = as_point(x), as_point(y)
    _check_point(dom, x, "x")
    _check_point(dom, y, "y")
    res = regular_part_batch(x, y.coords[None, :], dom, tr).item()
    return res


def singular_batch(x, ys, dom):
    x = as_point(x)
    d = np.linalg.norm(np.atleast_2d(ys) - x.coords, axis=1)
    return d ** (2 - dom.dim) / (dom.omega * (dom.dim - 2))


def green(x, y, dom, tr=Truncation()):
    """G(x, y) = Gamma(x - y) - H(x, y), with all three parts reported."""
    x, y = as_point(x), as_point(y)
    _check_point(dom, x, "x")
    _check_point(dom, y, "y")
    if np.array_equal(x.coords, y.coords):
        raise SingularityError("coincident points")
    h = regular_part(x, y, dom, tr)
    gam = float(singular_batch(x, y.coords[None, :], dom)[0])
    return GreenEvaluation(gam - h.value, h.value, gam, h.tail_estimate,
                           h.terms_used, h.reliable)


def green_batch(x, ys, dom, tr=Truncation()):
    """(G, H, Gamma, tail, terms, reliable) arrays for many y at once."""
    h = regular_part_batch(x, ys, dom, tr)
    gam = singular_batch(x, ys, dom)
    return gam - h.value, h.value, gam, h.tail_estimate, h.terms_used, h.reliable


def renormalized_green(x, y, dom, tr=Truncation(), mean=None, quad=None):
    """G(x, y) minus its mean over y; the mean is measured if not supplied."""
    if mean is None:
        mean = mean_over_y(x, dom, quad, tr)
    return green(x, y, dom, tr).green - mean


def robin(x, dom, tr=Truncation()):
    """Robin function tau(x) = H(x, x); depends on |x| only."""
    x = as_point(x)
    if x.dim != dom.dim:
        raise DomainError(f"point has {x.dim} coordinates, expected N = {dom.dim}")
    return robin_radial(x.radius, dom, tr).item()


def robin_radial(rho, dom, tr=Truncation()):
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any((rho == dom.a) | (rho == 1.0)):
        raise DivergenceError("Robin function diverges on the boundary spheres")
    if np.any((rho < dom.a) | (rho > 1.0)):
        raise DomainError("Robin function needs a < |x| < 1")
    return run_series(_backend.H, dom.dim, dom.a, rho, rho, 1.0, tr, dom.c0)


# -- boundary normal derivatives --------------------------------------------

def _boundary_side(dom, radius):
    if abs(radius - 1.0) <= RADIUS_SLACK:
        return 1.0, 1.0
    if abs(radius - dom.a) <= RADIUS_SLACK:
        return dom.a, -1.0
    raise DomainError(f"radius {radius} is on neither boundary sphere")


def normal_derivative_y_batch(x, dirs, boundary_radius, dom, tr=Truncation(),
                              gamma_route="series"):
    """Outward normal derivative of G(x, .) at the points boundary_radius * dirs.

    Returns a SeriesBatch whose tail and rounding combine both series.
    """
    x = as_point(x)
    r, sign = _boundary_side(dom, boundary_radius)
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    t = np.clip(dirs @ x.direction, -1.0, 1.0)
    dh = run_series(_backend.DH_R, dom.dim, dom.a, x.radius, r, t, tr, dom.c0)
    if gamma_route == "series":
        dg = run_series(_backend.DR, dom.dim, 0.0, x.radius, r, t, tr)
        dg_val, dg_tail, dg_round, dg_ok = dg.value, dg.tail_estimate, dg.rounding, dg.reliable
        order = np.maximum(dg.terms_used, dh.terms_used)
    elif gamma_route == "direct":
        d = r * dirs - x.coords
        dist = np.linalg.norm(d, axis=1)
        dg_val = -np.einsum("ij,ij->i", d, dirs) / (dom.omega * dist ** dom.dim)
        dg_tail = dg_round = 0.0
        dg_ok = True
        order = dh.terms_used
    else:
        raise ValueError(f"unknown gamma_route {gamma_route!r}")
    return SeriesBatch(sign * (dg_val - dh.value), order, dg_tail + dh.tail_estimate,
                       dg_round + dh.rounding, dh.reliable & dg_ok)


def normal_derivative_in_y(x, y_boundary, dom, tr=Truncation(), gamma_route="series"):
    """Outward normal derivative of G(x, .) at a boundary point.

    The normal is +d/dr on |y| = 1 and -d/dr on |y| = a. With
    ``gamma_route="series"`` the Gamma part comes from the zonal radial
    derivative series; ``"direct"`` uses the closed-form gradient, which
    makes the result an independent check of the regular-part series.
    """
    x, y = as_point(x), as_point(y_boundary)
    _check_point(dom, x, "x")
    if not dom.contains(x.radius, closed=False):
        raise DomainError("x must lie strictly inside the annulus")
    if y.dim != dom.dim:
        raise DomainError(f"y has {y.dim} coordinates, expected N = {dom.dim}")
    _boundary_side(dom, y.radius)
    return normal_derivative_y_batch(x, y.direction[None, :], y.radius, dom, tr,
                                     gamma_route).item()


def normal_derivative_x_batch(dirs, boundary_radius, y, dom, tr=Truncation()):
    """Outward normal derivative of G(., y) at boundary_radius * dirs."""
    y = as_point(y)
    rho, sign = _boundary_side(dom, boundary_radius)
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    t = np.clip(dirs @ y.direction, -1.0, 1.0)
    dh = run_series(_backend.DH_RHO, dom.dim, dom.a, rho, y.radius, t, tr, dom.c0)
    d = rho * dirs - y.coords
    dist = np.linalg.norm(d, axis=1)
    dg = -np.einsum("ij,ij->i", d, dirs) / (dom.omega * dist ** dom.dim)
    return dh._replace(value=sign * (dg - dh.value))


def normal_derivative_in_x(x_boundary, y, dom, tr=Truncation()):
    """Outward normal derivative of G(., y) at a boundary point x (reported, not imposed)."""
    x, y = as_point(x_boundary), as_point(y)
    _check_point(dom, y, "y")
    if not dom.contains(y.radius, closed=False):
        raise DomainError("y must lie strictly inside the annulus")
    _boundary_side(dom, x.radius)
    return normal_derivative_x_batch(x.direction[None, :], x.radius, y, dom, tr).item()


# -- exchange symmetry --------------------------------------------------------

def symmetry_defect(x, y, dom, tr=Truncation()):
    """G(x, y) - G(y, x) against the value C_0 (|x|^(2-N) - |y|^(2-N)).

    Every m >= 1 term of H is symmetric under exchanging |x| and |y|; only
    the C_0 term is not. ``bound`` combines the tail and rounding estimates
    of both evaluations.
    """
    x, y = as_point(x), as_point(y)
    gxy = regular_part(x, y, dom, tr)
    gyx = regular_part(y, x, dom, tr)
    fwd = green(x, y, dom, tr).green
    bwd = green(y, x, dom, tr).green
    n = dom.dim
    predicted = dom.c0 * (x.radius ** (2 - n) - y.radius ** (2 - n))
    bound = gxy.error_bound + gyx.error_bound
    return SymmetryDefect(fwd - bwd, predicted, bound)


# -- mean over y --------------------------------------------------------------

class MeanEstimate(NamedTuple):
    product: float
    adaptive: float
    monte_carlo: float
    mc_stderr: float


def _gl(n, lo, hi):
    z, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (hi - lo) * z + 0.5 * (hi + lo), 0.5 * (hi - lo) * w


def _sector_integrand(dom, rho, r):
    # radial (m = 0) sector of G(x, .) times r^(N-1); the m >= 1 sectors
    # integrate to zero over each sphere |y| = r
    n = dom.dim
    gam0 = np.maximum(rho, r) ** (2 - n) / (dom.omega * (n - 2))
    return dom.omega * r ** (n - 1) * (gam0 - dom.c0 * r ** (2 - n))


def mean_over_y(x, dom, quad=None, tr=Truncation()):
    """(1/|Omega|) * integral of G(x, y) dy, by the radial-sector product rule.

    The integrand r^(N-1) [max(rho, r)^(2-N) / (omega (N-2)) - C_0 r^(2-N)]
    is piecewise polynomial with a kink at r = |x|, so Gauss-Legendre on
    [a, |x|] and [|x|, 1] is exact once it has >= N/2 nodes per panel.
    """
    from .quadrature import QuadratureSpec

    quad = quad or QuadratureSpec()
    x = as_point(x)
    _check_point(dom, x, "x")
    if quad.radial_nodes < dom.dim:
        warnings.warn(f"{quad.radial_nodes} radial nodes may be too few for N = {dom.dim}",
                      AccuracyWarning, stacklevel=2)
    total = 0.0
    for lo, hi in ((dom.a, x.radius), (x.radius, 1.0)):
        if hi > lo:
            r, w = _gl(quad.radial_nodes, lo, hi)
            total += float(np.dot(w, _sector_integrand(dom, x.radius, r)))
    return total / dom.volume


def _graded_panels(levels=40, base=1e-12):
    # geometric grading toward theta = 0, where the kernel peaks when |y| ~ |x|
    edges = np.concatenate([[0.0], np.geomspace(base, math.pi, levels)])
    return edges


def _theta_integral(dom, rho, r, tr, nodes=10):
    """Integral over directions of G at radius r, reduced to a 1-D integral in theta."""
    n = dom.dim
    edges = _graded_panels()
    z, w = np.polynomial.legendre.leggauss(nodes)
    lo, hi = edges[:-1, None], edges[1:, None]
    th = (0.5 * (hi - lo) * z + 0.5 * (hi + lo)).ravel()
    wt = (0.5 * (hi - lo) * w).ravel()
    t = np.cos(th)
    dist = np.sqrt(np.maximum(rho * rho + r * r - 2.0 * rho * r * t, 0.0))
    gam = dist ** (2 - n) / (dom.omega * (n - 2))
    h = regular_part_polar(dom, rho, r, t, tr).value
    omega_low = surface_area(n - 1) if n > 3 else 2.0 * math.pi
    return omega_low * float(np.dot(wt, (gam - h) * np.sin(th) ** (n - 2)))


def mean_over_y_adaptive(x, dom, tr=Truncation(), epsrel=1e-11):
    """Full-field mean of G(x, .), independent of the radial-sector reduction.

    Integrates the summed series G = Gamma - H in polar coordinates about x'
    (radius by adaptive Gauss-Kronrod with a breakpoint at |x|, angle by a
    graded composite Gauss-Legendre rule).
    """
    x = as_point(x)
    _check_point(dom, x, "x")
    rho = x.radius
    n = dom.dim

    def outer(r):
        return r ** (n - 1) * _theta_integral(dom, rho, r, tr)

    total = 0.0
    for lo, hi in ((dom.a, rho), (rho, 1.0)):
        if hi > lo:
            val, _ = integrate.quad(outer, lo, hi, epsabs=0.0, epsrel=epsrel, limit=200)
            total += val
    return total / dom.volume


def mean_over_y_schemes(x, dom, quad=None, tr=Truncation(), eps=1e-2):
    """Mean of G(x, .) by the sector product rule, full-field adaptive
    quadrature, and full-field Monte Carlo with a ball excised around x."""
    from .quadrature import QuadratureSpec, annulus_integral

    quad = quad or QuadratureSpec()
    x = as_point(x)
    prod = mean_over_y(x, dom, quad, tr)
    adap = mean_over_y_adaptive(x, dom, tr)
    n = dom.dim
    # Gamma integrates to eps^2/(2(N-2)) over B_eps(x); H is harmonic in y,
    # so its ball integral is exactly H(x, x) |B_eps| (mean-value property)
    h_xx = robin(x, dom, tr).value
    ball = eps ** 2 / (2.0 * (n - 2)) - h_xx * dom.omega * eps ** n / n

    def field_g(ys):
        return green_batch(x, ys, dom, tr)[0]

    res = annulus_integral(field_g, dom, quad, singular_point=x.coords,
                           ball_radius=eps, ball_value=ball, product_rule=False)
    return MeanEstimate(prod, adap, float(res.monte_carlo / dom.volume),
                        float(res.mc_stderr / dom.volume))
