"""Zonal expansions of the Newton kernel |x - y|^(2-N) and of its radial derivative.

For |y| < |x|,

    |x - y|^(2-N) = sum_m (N-2)/(2m+N-2) |y|^m / |x|^(m+N-2) Z_m(x', y'),

and the same with the roles of |x| and |y| exchanged when |x| < |y|.
Differentiating term by term in r = |y| gives the two branches of the
radial derivative of the fundamental solution. Neither expansion covers
|x| = |y|; those inputs are rejected.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _backend
from .errors import BranchError, DomainError, SingularityError
from .harmonics import surface_area, zonal_diagonal


class EvalPoint:
    """A point of R^N with cached radius and unit direction.

    ``direction`` is ``None`` at the origin.
    """

    __slots__ = ("coords", "radius", "direction")

    def __init__(self, coords):
        c = np.array(coords, dtype=float).reshape(-1)
        if c.size == 0 or not np.all(np.isfinite(c)):
            raise DomainError("point coordinates must be finite and non-empty")
        c.flags.writeable = False
        radius = float(np.linalg.norm(c))
        if radius > 0.0:
            d = c / radius
            d.flags.writeable = False
        else:
            d = None
        object.__setattr__(self, "coords", c)
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "direction", d)

    def __setattr__(self, name, value):
        raise AttributeError("EvalPoint is immutable")

    @property
    def dim(self):
        return self.coords.size

    def rotated(self, rotation):
        return EvalPoint(np.asarray(rotation) @ self.coords)

    def __repr__(self):
        return f"EvalPoint({self.coords.tolist()!r})"


def as_point(p):
    return p if isinstance(p, EvalPoint) else EvalPoint(p)


@dataclass(frozen=True)
class Truncation:
    """Series cutoff policy.

    ``max_order`` is the highest order ever summed (0 keeps only the m = 0
    term). In adaptive mode summation stops earlier, once three consecutive
    term envelopes fall below ``rel_tol`` times the running sum.
    """

    max_order: int = 4000
    rel_tol: float = 1e-14
    adaptive: bool = True

    def __post_init__(self):
        if int(self.max_order) != self.max_order or self.max_order < 0:
            raise DomainError(f"max_order must be a non-negative integer, got {self.max_order}")
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol}")

    def fixed(self, order):
        """Non-adaptive policy summing exactly up to ``order``."""
        return Truncation(max_order=int(order), rel_tol=self.rel_tol, adaptive=False)


@dataclass(frozen=True)
class SeriesValue:
    """Truncated series result.

    ``terms_used`` is the highest order retained. ``tail_estimate`` bounds the
    discarded remainder by summing term envelopes |coef_m| C_m(1) (which
    dominate the terms) and is ``inf`` when no convergence certificate
    exists. ``rounding`` estimates floating-point error of the retained sum.
    """

    value: float
    terms_used: int
    tail_estimate: float
    rounding: float = 0.0
    reliable: bool = True

    @property
    def error_bound(self):
        return self.tail_estimate + self.rounding


class SeriesBatch(NamedTuple):
    value: np.ndarray
    terms_used: np.ndarray
    tail_estimate: np.ndarray
    rounding: np.ndarray
    reliable: np.ndarray

    def item(self, i=0):
        return SeriesValue(float(self.value[i]), int(self.terms_used[i]),
                           float(self.tail_estimate[i]), float(self.rounding[i]),
                           bool(self.reliable[i]))


def run_series(kind, n_dim, a, rho, r, t, tr, c0=0.0):
    """Evaluate one series kind on arrays of (rho, r, t)."""
    out = _backend.series_eval(kind, int(n_dim), float(a), surface_area(n_dim),
                               rho, r, t, int(tr.max_order), float(tr.rel_tol),
                               bool(tr.adaptive), float(c0))
    return SeriesBatch(*out)


def _check_dim(p, n_dim):
    if p.dim != n_dim:
        raise DomainError(f"point has {p.dim} coordinates, expected N = {n_dim}")


def _pair(x, y, n_dim):
    x, y = as_point(x), as_point(y)
    _check_dim(x, n_dim)
    _check_dim(y, n_dim)
    if np.array_equal(x.coords, y.coords):
        raise SingularityError("coincident points")
    return x, y


def _cosine(x, y):
    if x.direction is None or y.direction is None:
        return 1.0
    return float(np.clip(np.dot(x.direction, y.direction), -1.0, 1.0))


def newton_kernel_direct(x, y, n_dim):
    """|x - y|^(2-N); divide by omega_(N-1) (N-2) for the fundamental solution."""
    x, y = _pair(x, y, n_dim)
    return float(np.linalg.norm(x.coords - y.coords)) ** (2 - n_dim)


def fundamental_solution(x, y, n_dim):
    return newton_kernel_direct(x, y, n_dim) / (surface_area(n_dim) * (n_dim - 2))


def _branch_pair(x, y, n_dim):
    x, y = _pair(x, y, n_dim)
    if x.radius == y.radius:
        raise BranchError("|x| = |y|: neither branch of the expansion applies")
    return x, y


def newton_kernel_series(x, y, n_dim, tr=Truncation()):
    """Zonal expansion of |x - y|^(2-N), branch chosen by comparing radii."""
    x, y = _branch_pair(x, y, n_dim)
    res = run_series(_backend.NEWTON, n_dim, 0.0, x.radius, y.radius,
                     _cosine(x, y), tr)
    return res.item()


def radial_derivative_series(x, y, n_dim, tr=Truncation()):
    """d/d|y| of the fundamental solution Gamma(y - x), direction of y fixed."""
    x, y = _branch_pair(x, y, n_dim)
    if y.radius == 0.0:
        raise DomainError("radial derivative undefined at y = 0")
    res = run_series(_backend.DR, n_dim, 0.0, x.radius, y.radius, _cosine(x, y), tr)
    return res.item()


def radial_derivative_direct(x, y, n_dim):
    """Closed form d/d|y| Gamma(y - x) = -(y - x).y' / (omega |y - x|^N)."""
    x, y = _pair(x, y, n_dim)
    d = y.coords - x.coords
    dist = float(np.linalg.norm(d))
    return -float(np.dot(d, y.direction)) / (surface_area(n_dim) * dist ** n_dim)


class TruncationBound(NamedTuple):
    envelope: float
    ratio: float
    certified: bool


def convergence_ratio(rho, r, a):
    """Geometric decay ratio q = max(rho r, a^2 / (rho r)) of the regular-part series."""
    pr = rho * r
    return max(pr, a * a / pr)


def truncation_bound(m, rho, r, a, n_dim):
    """Envelope of the m-th regular-part term and its geometric tail ratio.

    envelope = (|A_m(rho)| r^m + |B_m(rho)| r^-(m+N-2)) Z_m(xi, xi) / omega.
    ``certified`` is False when q >= 1: the envelope still evaluates but no
    tail bound follows from it.
    """
    from .green_kernel import Annulus, coeff_A, coeff_B

    if m < 1:
        raise DomainError("envelope defined for m >= 1")
    dom = Annulus(n_dim, a)
    k = m + n_dim - 2
    env = (abs(coeff_A(m, dom, rho)) * r ** m
           + abs(coeff_B(m, dom, rho)) * r ** (-k)) * zonal_diagonal(m, n_dim)
    q = convergence_ratio(rho, r, a)
    return TruncationBound(env / surface_area(n_dim), q, q < 1.0)
