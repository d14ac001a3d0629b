"""Quadrature over the annulus and over spheres.

Product rule: Gauss-Legendre in the radius times equal-weight quasi-uniform
directions on S^(N-1). Directions come in antipodal pairs, so odd
functions of the direction integrate to zero exactly. The companion Monte
Carlo estimate samples the annulus uniformly from a seeded generator.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .harmonics import surface_area


@dataclass(frozen=True)
class QuadratureSpec:
    radial_nodes: int = 32
    sphere_samples: int = 1024
    monte_carlo_seed: int = 0
    monte_carlo_samples: int = 200_000

    def __post_init__(self):
        if self.radial_nodes < 4:
            raise DomainError("radial_nodes must be >= 4")
        if self.sphere_samples < 32:
            raise DomainError("sphere_samples must be >= 32")
        if self.monte_carlo_samples < 1:
            raise DomainError("monte_carlo_samples must be positive")


class AnnulusIntegral(NamedTuple):
    product: float
    monte_carlo: float
    mc_stderr: float


def fibonacci_sphere(n):
    """n points of the spherical Fibonacci lattice on S^2."""
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    phi = np.pi * (1.0 + 5 ** 0.5) * i
    s = np.sqrt(1.0 - z * z)
    return np.column_stack([s * np.cos(phi), s * np.sin(phi), z])


def sphere_directions(n_dim, n, seed=0):
    """``n`` quasi-uniform unit vectors in R^N (rounded up to an even count).

    Half are generated (Fibonacci lattice for N = 3, seeded normalised
    Gaussians otherwise) and the other half are their antipodes.
    """
    half = (n + 1) // 2
    if n_dim == 3:
        base = fibonacci_sphere(half)
    else:
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((half, n_dim))
        base = g / np.linalg.norm(g, axis=1, keepdims=True)
    return np.concatenate([base, -base])


def random_directions(n_dim, n, rng):
    g = rng.standard_normal((n, n_dim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def gauss_legendre(n, lo, hi):
    z, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (hi - lo) * z + 0.5 * (hi + lo), 0.5 * (hi - lo) * w


def _evaluate(field, pts):
    vals = np.asarray(field(pts), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise DomainError("field is not finite at a quadrature node; declare the singular point")
    return vals


def annulus_integral(field, dom, quad, singular_point=None, ball_radius=1e-2,
                     ball_value=0.0, product_rule=True):
    """Integral of ``field`` over the annulus by product rule and Monte Carlo.

    ``field`` maps an (k, N) array of points to k values. With
    ``singular_point`` declared, nodes inside the ball of ``ball_radius``
    around it are dropped and ``ball_value`` (the caller's analytic integral
    over that ball) is added to both estimates. ``product_rule=False`` skips
    the product rule and reports it as nan.
    """
    n = dom.dim
    product = math.nan
    if product_rule:
        r, wr = gauss_legendre(quad.radial_nodes, dom.a, 1.0)
        dirs = sphere_directions(n, quad.sphere_samples, quad.monte_carlo_seed)
        pts = (r[:, None, None] * dirs[None, :, :]).reshape(-1, n)
        w = np.repeat(wr * r ** (n - 1) * surface_area(n) / len(dirs), len(dirs))
        if singular_point is not None:
            keep = np.linalg.norm(pts - np.asarray(singular_point), axis=1) >= ball_radius
            pts, w = pts[keep], w[keep]
        product = float(np.dot(w, _evaluate(field, pts)))

    rng = np.random.default_rng(quad.monte_carlo_seed)
    k = quad.monte_carlo_samples
    u = rng.random(k)
    rad = (dom.a ** n + u * (1.0 - dom.a ** n)) ** (1.0 / n)
    mc_pts = rad[:, None] * random_directions(n, k, rng)
    vals = np.zeros(k)
    if singular_point is not None:
        keep = np.linalg.norm(mc_pts - np.asarray(singular_point), axis=1) >= ball_radius
    else:
        keep = np.ones(k, dtype=bool)
    vals[keep] = _evaluate(field, mc_pts[keep])
    vol = dom.volume
    mc = vol * float(vals.mean())
    se = vol * float(vals.std(ddof=1)) / math.sqrt(k)
    if singular_point is not None:
        product += ball_value
        mc += ball_value
    return AnnulusIntegral(product, mc, se)


def sphere_flux(normal_derivative, center, radius, n_dim, samples, seed=0):
    """Surface integral over the sphere |y - center| = radius.

    ``normal_derivative`` maps (k, N) points and (k, N) outward normals to k
    values; equal weights omega radius^(N-1) / k.
    """
    dirs = sphere_directions(n_dim, samples, seed)
    pts = np.asarray(center)[None, :] + radius * dirs
    vals = np.asarray(normal_derivative(pts, dirs), dtype=float)
    return surface_area(n_dim) * radius ** (n_dim - 1) * float(vals.mean())
