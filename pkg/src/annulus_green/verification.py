"""Independent numerical oracles and the machine-readable verification report.

Each suite returns a list of :class:`CheckResult`. Status is ``pass`` or
``fail`` for hard checks, ``flagged`` for soft ones that missed (near
boundary cones, ill-conditioned annuli) and ``report`` for measurements
that carry no pass/fail claim. Suites are independent, may run on a thread
pool, and are keyed by name, so the report never depends on scheduling.
"""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import GeometryError
from .green_kernel import (Annulus, boundary_system_residual, coeff_A, coeff_B,
                           coeffs_via_cramer, green_batch, mean_over_y_schemes,
                           normal_derivative_x_batch, normal_derivative_y_batch,
                           regular_part, regular_part_batch, regular_part_polar,
                           robin_radial, singular_batch, symmetry_defect)
from .harmonics import (gegenbauer_all, gegenbauer_oracle_series, surface_area,
                        zonal_explicit, zonal_of_dot)
from .kernel_expansion import (EvalPoint, Truncation, as_point,
                               newton_kernel_direct, newton_kernel_series,
                               radial_derivative_series, run_series)
from .quadrature import QuadratureSpec, sphere_directions, sphere_flux
from .tolerances import DEFAULT, Tolerances

PASS, FAIL, FLAGGED, REPORT = "pass", "fail", "flagged", "report"
GEGENBAUER_LAMBDAS = (0.5, 1.0, 1.5, 2.5)


def _clean(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_clean(u) for u in v]
    if isinstance(v, dict):
        return {str(k): _clean(u) for k, u in v.items()}
    return v


@dataclass(frozen=True)
class CheckResult:
    name: str
    target: object
    measured: object
    tolerance: object
    status: str
    note: str = ""

    def to_dict(self):
        return {"name": self.name, "target": _clean(self.target),
                "measured": _clean(self.measured), "tolerance": _clean(self.tolerance),
                "status": self.status, "notes": self.note}


@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def add(self, check):
        if check.name in self.checks:
            raise ValueError(f"duplicate check name {check.name}")
        self.checks[check.name] = check

    def extend(self, checks):
        for c in checks:
            self.add(c)

    @property
    def failures(self):
        return sorted(n for n, c in self.checks.items() if c.status == FAIL)

    @property
    def flagged(self):
        return sorted(n for n, c in self.checks.items() if c.status == FLAGGED)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {"meta": _clean(self.meta),
                "summary": {"checks": len(self.checks), "failures": self.failures,
                            "flagged": self.flagged, "passed": self.passed},
                "checks": [self.checks[k].to_dict() for k in sorted(self.checks)]}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _check(name, target, measured, tol, ok, hard=True, note=""):
    status = PASS if ok else (FAIL if hard else FLAGGED)
    return CheckResult(name, target, measured, tol, status, note)


# -- oracles ------------------------------------------------------------------

def fd_laplacian(field, p, h, dom=None):
    """(2N+1)-point second-order Laplacian of ``field`` at ``p``.

    ``field`` maps a (k, N) array of points to k values. With ``dom`` given,
    the stencil must stay inside the closed annulus.
    """
    p = as_point(p)
    n = p.dim
    if dom is not None and (p.radius - h < dom.a or p.radius + h > 1.0):
        raise GeometryError(f"stencil of size {h} at radius {p.radius} leaves the annulus")
    eye = np.eye(n)
    pts = np.vstack([p.coords[None, :], p.coords + h * eye, p.coords - h * eye])
    v = np.asarray(field(pts), dtype=float)
    return float((v[1:n + 1].sum() + v[n + 1:].sum() - 2 * n * v[0]) / (h * h))


def convergence_order(hs, residuals):
    """Slope of log|residual| against log h (least squares)."""
    return float(np.polyfit(np.log(hs), np.log(np.abs(residuals)), 1)[0])


def flux_probe(x, dom, eps, quad=None, tr=Truncation(), field="green"):
    """Outward flux of grad_y of a field over the sphere |y - x| = eps.

    ``field`` is ``"green"``, ``"singular"`` (Gamma) or ``"regular"`` (H).
    Normal derivatives are centred differences with step eps * 1e-3; the
    regular part is summed at a fixed order so the stencil sees one smooth
    function.
    """
    quad = quad or QuadratureSpec()
    x = as_point(x)
    if x.radius - eps <= dom.a or x.radius + eps >= 1.0:
        raise GeometryError("probe sphere leaves the annulus")
    h = eps * 1e-3
    order = regular_part(x, x.coords * (1 - eps / x.radius), dom, tr).terms_used + 10
    ftr = tr.fixed(order)

    def value(ys):
        if field == "singular":
            return singular_batch(x, ys, dom)
        hv = regular_part_batch(x, ys, dom, ftr).value
        if field == "regular":
            return hv
        if field == "green":
            return singular_batch(x, ys, dom) - hv
        raise ValueError(f"unknown field {field!r}")

    def dnormal(pts, normals):
        return (value(pts + h * normals) - value(pts - h * normals)) / (2 * h)

    return sphere_flux(dnormal, x.coords, eps, dom.dim, quad.sphere_samples,
                       quad.monte_carlo_seed)


def boundary_scan(x, dom, samples, tr=Truncation(), seed=0, tol=DEFAULT, label=""):
    """Neumann residuals of G(x, .) on both spheres, and the x-variable counterpart.

    y-variable residuals against -1/|boundary| are hard checks away from the
    cone of half-angle ``tol.neumann_min_separation`` around x'; inside the
    cone they are flagged. The x-variable scan is report-only.
    """
    x = as_point(x)
    target = -1.0 / dom.boundary_measure
    dirs = sphere_directions(dom.dim, samples, seed)
    sep = np.arccos(np.clip(dirs @ x.direction, -1.0, 1.0))
    away = sep >= tol.neumann_min_separation
    out = []
    tag = f"[{label}]" if label else ""
    for side, radius in (("outer", 1.0), ("inner", dom.a)):
        for route in ("series", "direct"):
            res = normal_derivative_y_batch(x, dirs, radius, dom, tr, route)
            resid = np.abs(res.value - target)
            bound = res.tail_estimate + res.rounding
            worst = float(resid[away].max())
            out.append(_check(f"neumann_y.{side}.{route}{tag}", target,
                              {"max_residual": worst, "mean_residual": float(resid[away].mean()),
                               "samples": int(away.sum())},
                              tol.neumann_abs, worst <= tol.neumann_abs))
            ratio = float(np.max(resid[away] / np.maximum(10 * bound[away], 1e-300)))
            out.append(_check(f"neumann_y.{side}.{route}.within_10x_tail{tag}", "<= 1",
                              ratio, 1.0, ratio <= 1.0,
                              note="residual / (10 x (tail + rounding))"))
            if (~away).any():
                cone = float(resid[~away].max())
                out.append(_check(f"neumann_y.{side}.{route}.cone{tag}", target, cone,
                                  tol.neumann_abs, cone <= tol.neumann_abs, hard=False,
                                  note="directions within the separation cone of x'"))
        xs = normal_derivative_x_batch(dirs, radius, x, dom, tr)
        out.append(CheckResult(
            f"neumann_x.{side}{tag}", target,
            {"mean": float(xs.value.mean()), "min": float(xs.value.min()),
             "max": float(xs.value.max()), "minus_one_over_omega": -1.0 / dom.omega},
            None, REPORT,
            "x-variable normal derivative of G(., y); no claim is made about it"))
    return out


# -- suites -------------------------------------------------------------------

def _interior(rng, dom, n, margin):
    lo, hi = dom.a + margin, 1.0 - margin
    rad = rng.uniform(lo, hi, n)
    g = rng.standard_normal((n, dom.dim))
    return rad[:, None] * g / np.linalg.norm(g, axis=1, keepdims=True)


def suite_gegenbauer(dom, tol, seed, lams=None):
    lams = lams or [0.5 * (dom.dim - 2)]
    mmax = tol.gegenbauer_max_order
    grid = np.linspace(-1.0, 1.0, 41)
    out = []
    for lam in lams:
        table = gegenbauer_all(mmax, lam, grid)
        worst = 0.0
        for j, t in enumerate(grid):
            exact = gegenbauer_oracle_series(mmax, lam, float(t))
            for m in range(mmax + 1):
                o = float(exact[m])
                worst = max(worst, abs(table[m, j] - o) / max(1.0, abs(o)))
        out.append(_check(f"gegenbauer.recurrence_vs_oracle.lambda={lam:g}", 0.0, worst,
                          tol.gegenbauer_rel, worst <= tol.gegenbauer_rel,
                          note=f"m <= {mmax}, 41-point grid, error / max(1, |exact|)"))
    return out


def suite_zonal(dom, tol, seed, dims=None):
    rng = np.random.default_rng(seed + 11)
    out = []
    for n in dims or [dom.dim]:
        worst = 0.0
        for _ in range(12):
            u = rng.standard_normal(n)
            v = rng.standard_normal(n)
            u /= np.linalg.norm(u)
            v /= np.linalg.norm(v)
            t = float(np.clip(u @ v, -1, 1))
            for m in range(1, tol.zonal_explicit_max_order + 1):
                worst = max(worst, abs(zonal_explicit(m, n, u, v) - zonal_of_dot(m, n, t)))
        out.append(_check(f"zonal.explicit_vs_gegenbauer.N={n}", 0.0, worst,
                          tol.zonal_explicit_abs, worst <= tol.zonal_explicit_abs,
                          note=f"m <= {tol.zonal_explicit_max_order} on the unit sphere"))
    return out


def _ratio_pairs(rng, n_dim, count, ratio_max):
    xs, ys = [], []
    while len(xs) < count:
        r1, r2 = rng.uniform(0.2, 1.0, 2)
        if r1 == r2 or min(r1, r2) / max(r1, r2) > ratio_max:
            continue
        u = rng.standard_normal(n_dim)
        v = rng.standard_normal(n_dim)
        xs.append(r1 * u / np.linalg.norm(u))
        ys.append(r2 * v / np.linalg.norm(v))
    return xs, ys


def suite_newton(dom, tol, seed, dims=None, tr=Truncation()):
    rng = np.random.default_rng(seed + 13)
    out = []
    for n in dims or [dom.dim]:
        xs, ys = _ratio_pairs(rng, n, 60, tol.newton_ratio_max)
        worst = swap = 0.0
        for x, y in zip(xs, ys):
            exact = newton_kernel_direct(x, y, n)
            s = newton_kernel_series(x, y, n, tr).value
            worst = max(worst, abs(s - exact) / exact)
            swap = max(swap, abs(newton_kernel_series(y, x, n, tr).value - s) / exact)
        out.append(_check(f"newton.series_vs_direct.N={n}", 0.0, worst, tol.newton_series_rel,
                          worst <= tol.newton_series_rel,
                          note=f"r_</r_> <= {tol.newton_ratio_max}, relative error"))
        out.append(_check(f"newton.swap_symmetry.N={n}", 0.0, swap, 1e-12, swap <= 1e-12))
    return out


def suite_radial_derivative(dom, tol, seed, dims=None, tr=Truncation()):
    rng = np.random.default_rng(seed + 17)
    h = tol.radial_derivative_step
    out = []
    for n in dims or [dom.dim]:
        omega = surface_area(n)
        xs, ys = _ratio_pairs(rng, n, 40, tol.newton_ratio_max)
        worst = {"inner": 0.0, "outer": 0.0}
        for x, y in zip(xs, ys):
            yp = EvalPoint(y)
            gp = newton_kernel_direct(x, (yp.radius + h) * yp.direction, n)
            gm = newton_kernel_direct(x, (yp.radius - h) * yp.direction, n)
            fd = (gp - gm) / (2 * h) / (omega * (n - 2))
            s = radial_derivative_series(x, y, n, tr).value
            branch = "inner" if yp.radius < np.linalg.norm(x) else "outer"
            worst[branch] = max(worst[branch], abs(s - fd))
        for branch, w in worst.items():
            out.append(_check(f"radial_derivative.{branch}_branch_vs_fd.N={n}", 0.0, w,
                              tol.radial_derivative_abs, w <= tol.radial_derivative_abs,
                              note=f"centred difference in |y| at h = {h}"))
    return out


def suite_coefficients(dom, tol, seed, dims=None, radii=None):
    out = []
    for n in dims or [dom.dim]:
        for a in radii or [dom.a]:
            d = dom if (n, a) == (dom.dim, dom.a) else Annulus(n, a, warn=False)
            worst = resid = 0.0
            for rho in np.linspace(a, 1.0, 9):
                for m in range(1, tol.coefficient_max_order + 1):
                    A, B = coeff_A(m, d, rho), coeff_B(m, d, rho)
                    Ac, Bc = coeffs_via_cramer(m, d, rho)
                    worst = max(worst, abs(A - Ac) / abs(Ac), abs(B - Bc) / abs(Bc))
                    resid = max(resid, *boundary_system_residual(m, d, rho, A, B))
            out.append(_check(f"coefficients.closed_vs_cramer.N={n}.a={a:g}", 0.0, worst,
                              tol.coefficient_rel, worst <= tol.coefficient_rel,
                              note=f"m <= {tol.coefficient_max_order}, 9-point rho grid"))
            out.append(_check(f"coefficients.boundary_residual.N={n}.a={a:g}", 0.0, resid,
                              tol.boundary_residual_rel, resid <= tol.boundary_residual_rel))
    return out


def suite_neumann(dom, tol, seed, tr=Truncation(), points=3, samples=400, dims=None):
    out = []
    for n in dims or [dom.dim]:
        d = dom if n == dom.dim else Annulus(n, dom.a, warn=False)
        rng = np.random.default_rng(seed + 19 + n)
        for i, x in enumerate(_interior(rng, d, points, 0.05 * (1 - d.a))):
            out.extend(boundary_scan(x, d, samples, tr, seed + i, tol, label=f"N={n},x{i}"))
    return out


def _harmonic_residuals(field, p, hs, dom):
    return [fd_laplacian(field, p, h, dom) for h in hs]


def suite_harmonicity(dom, tol, seed, tr=Truncation(), pairs=4):
    rng = np.random.default_rng(seed + 23)
    width = 1.0 - dom.a
    # thin shells shrink the stencil; the fitted order is scale-free
    hs = np.array(tol.harmonic_steps) * min(1.0, 0.2 * width / max(tol.harmonic_steps))
    clearance = min(tol.harmonic_clearance, 0.3 * width)
    margin = clearance + hs.max()
    orders = {"y": [], "x": []}
    worst_res = {"y": 0.0, "x": 0.0}
    while len(orders["y"]) < pairs:
        x, y = _interior(rng, dom, 2, margin)
        if np.linalg.norm(x - y) < clearance:
            continue
        fixed = tr.fixed(regular_part(x, y, dom, tr).terms_used + 20)
        xp, yp = as_point(x), as_point(y)

        def in_y(ys, xp=xp, fixed=fixed):
            return regular_part_batch(xp, ys, dom, fixed).value

        def in_x(xs, yp=yp, fixed=fixed):
            rho = np.linalg.norm(xs, axis=1)
            t = np.clip(xs @ yp.direction / rho, -1, 1)
            return regular_part_polar(dom, rho, yp.radius, t, fixed).value

        for var, fn, p in (("y", in_y, y), ("x", in_x, x)):
            res = _harmonic_residuals(fn, p, hs, dom)
            orders[var].append(convergence_order(hs, res))
            worst_res[var] = max(worst_res[var], abs(res[-1]))
    out = []
    for var in ("y", "x"):
        dev = max(abs(o - tol.harmonic_order) for o in orders[var])
        out.append(_check(f"harmonicity.regular_part_in_{var}.order", tol.harmonic_order,
                          orders[var], tol.harmonic_order_slack,
                          dev <= tol.harmonic_order_slack,
                          note=f"log-log slope of FD Laplacian over h = {list(hs)}"))
        out.append(CheckResult(f"harmonicity.regular_part_in_{var}.residual_at_hmin", 0.0,
                               worst_res[var], None, REPORT, "largest |FD Laplacian| at smallest h"))
    return out


def suite_flux(dom, tol, seed, quad, tr=Truncation(), points=2):
    rng = np.random.default_rng(seed + 29)
    eps = min(tol.flux_radius, 0.25 * (1.0 - dom.a))
    out = []
    for i, x in enumerate(_interior(rng, dom, points, 1.5 * eps)):
        fg = flux_probe(x, dom, eps, quad, tr, "green")
        fs = flux_probe(x, dom, eps, quad, tr, "singular")
        fh = flux_probe(x, dom, eps, quad, tr, "regular")
        out.append(_check(f"flux.green[x{i}]", tol.flux_target, fg, tol.flux_abs,
                          abs(fg - tol.flux_target) <= tol.flux_abs,
                          note=f"sphere radius {eps}, {quad.sphere_samples} directions"))
        out.append(_check(f"flux.singular[x{i}]", -1.0, fs, tol.flux_abs,
                          abs(fs + 1.0) <= tol.flux_abs))
        out.append(_check(f"flux.regular[x{i}]", 0.0, fh, tol.flux_regular_abs,
                          abs(fh) <= tol.flux_regular_abs))
        lin = abs(fs - fh - fg)
        out.append(_check(f"flux.linearity[x{i}]", 0.0, lin, tol.flux_linearity_abs,
                          lin <= tol.flux_linearity_abs, note="flux(Gamma) - flux(H) - flux(G)"))
    return out


def suite_exchange(dom, tol, seed, tr=Truncation()):
    rng = np.random.default_rng(seed + 31)
    pts = _interior(rng, dom, 2 * tol.exchange_pairs, 0.02 * (1 - dom.a))
    worst_ratio = 0.0
    worst_abs = 0.0
    for x, y in zip(pts[0::2], pts[1::2]):
        d = symmetry_defect(x, y, dom, tr)
        gap = abs(d.measured - d.predicted)
        worst_abs = max(worst_abs, gap)
        worst_ratio = max(worst_ratio, gap / d.bound if d.bound > 0 else math.inf)
    out = [_check("exchange.defect_matches_C0_term", "<= 1", worst_ratio, 1.0,
                  worst_ratio <= 1.0,
                  note=f"{tol.exchange_pairs} pairs; |measured - predicted| / combined "
                       f"tail+rounding; max abs gap {worst_abs:.3e}")]
    eq = 0.0
    for x in pts[:20]:
        u = rng.standard_normal(dom.dim)
        y = np.linalg.norm(x) * u / np.linalg.norm(u)
        d = symmetry_defect(x, y, dom, tr)
        eq = max(eq, abs(d.measured), abs(d.predicted))
    out.append(_check("exchange.equal_radii", 0.0, eq, tol.exchange_equal_radii_abs,
                      eq <= tol.exchange_equal_radii_abs))
    return out


def mean_closed_form(dom, rho):
    """Exact mean of G(x, .) from the radial sector, for |x| = rho."""
    n, a = dom.dim, dom.a
    gam = (rho ** 2 / n - a ** n * rho ** (2 - n) / n + (1 - rho ** 2) / 2) / (n - 2)
    return (gam - dom.omega * dom.c0 * (1 - a * a) / 2) / dom.volume


def suite_mean(dom, tol, seed, quad, tr=Truncation()):
    out = []
    table = []
    fracs = (0.2, 0.5, 0.8)
    if not dom.well_conditioned:
        # slowly convergent series everywhere; one radius, smaller MC budget
        fracs = (0.5,)
        quad = QuadratureSpec(quad.radial_nodes, quad.sphere_samples, quad.monte_carlo_seed,
                              min(quad.monte_carlo_samples, 20_000))
    for frac in fracs:
        rho = dom.a + frac * (1 - dom.a)
        x = np.zeros(dom.dim)
        x[0] = rho
        # excised ball must stay inside the shell
        eps = 0.5 * min(rho - dom.a, 1.0 - rho, 0.02)
        est = mean_over_y_schemes(x, dom, quad, tr, eps=eps)
        gap = abs(est.product - est.adaptive)
        out.append(_check(f"mean_over_y.schemes_agree[rho={rho:.4g}]", 0.0, gap,
                          tol.mean_scheme_abs, gap <= tol.mean_scheme_abs,
                          note="radial-sector product rule vs full-field adaptive quadrature"))
        z = abs(est.monte_carlo - est.product) / est.mc_stderr
        out.append(_check(f"mean_over_y.monte_carlo[rho={rho:.4g}]", 0.0, z,
                          tol.monte_carlo_sigmas, z <= tol.monte_carlo_sigmas,
                          note=f"|MC - product| in standard errors (se = {est.mc_stderr:.3e})"))
        table.append({"rho": rho, "product": est.product, "adaptive": est.adaptive,
                      "monte_carlo": est.monte_carlo, "mc_stderr": est.mc_stderr,
                      "closed_form": mean_closed_form(dom, rho)})
    vals = [row["product"] for row in table]
    out.append(CheckResult(
        "mean_over_y.zero_average_claim", 0.0, table, None, REPORT,
        f"measured mean of G(x, .) over the annulus; spread over |x| = "
        f"{max(vals) - min(vals):.6e}; the formula as stated is not zero-mean in y"))
    return out


def suite_tail_bound(dom, tol, seed, tr=Truncation(), points=200):
    """tail_estimate should bound |S_M - S_4M| at >= 99% of interior points."""
    rng = np.random.default_rng(seed + 37)
    xs = _interior(rng, dom, points, 0.02 * (1 - dom.a))
    ys = _interior(rng, dom, points, 0.02 * (1 - dom.a))
    rho = np.linalg.norm(xs, axis=1)
    r = np.linalg.norm(ys, axis=1)
    t = np.clip(np.einsum("ij,ij->i", xs, ys) / (rho * r), -1, 1)
    loose = Truncation(max_order=tr.max_order, rel_tol=1e-8, adaptive=True)
    base = regular_part_polar(dom, rho, r, t, loose)
    ok = 0
    for i in range(points):
        ref = regular_part_polar(dom, rho[i], r[i], t[i],
                                 tr.fixed(4 * int(base.terms_used[i]))).value[0]
        ok += abs(base.value[i] - ref) <= base.tail_estimate[i] + base.rounding[i]
    frac = ok / points
    return [_check("series.tail_estimate_bounds_remainder", ">= 0.99", frac, 0.99,
                   frac >= 0.99, note=f"{points} interior pairs, rel_tol 1e-8, M vs 4M")]


def suite_robin(dom, tol, seed, tr=Truncation()):
    out = []
    gaps = np.geomspace(1e-1, 1e-3, 5) * (1 - dom.a)
    for side, rads in (("outer", 1.0 - gaps), ("inner", dom.a + gaps)):
        vals = np.abs(robin_radial(rads, dom, tr).value)
        mono = bool(np.all(np.diff(vals) > 0))
        out.append(_check(f"robin.divergence_toward_{side}", "increasing |tau|",
                          vals.tolist(), None, mono, hard=False,
                          note="geometric approach to the boundary sphere"))
    grid = np.linspace(dom.a, 1.0, 7)[1:-1]
    res = robin_radial(grid, dom, tr)
    out.append(CheckResult("robin.profile", None,
                           {"rho": grid.tolist(), "tau": res.value.tolist()}, None, REPORT))
    return out


def _conditioning(dom, checks):
    if dom.well_conditioned:
        return checks
    relaxed = []
    for c in checks:
        if c.status == FAIL:
            c = CheckResult(c.name, c.target, c.measured, c.tolerance, FLAGGED,
                            (c.note + "; " if c.note else "") + "relaxed: a > 0.95")
        relaxed.append(c)
    return relaxed


def run_full_verification(dom, budget=None, tr=Truncation(), seed=0, workers=1,
                          tol=DEFAULT):
    """Run every suite on a seeded point set and collect one report.

    Deterministic for a given (dom, budget, tr, seed) regardless of
    ``workers``. For a > 0.95 failing checks are downgraded to flagged and
    a conditioning warning is recorded.
    """
    budget = budget or QuadratureSpec()
    coef_radii = sorted({0.25, 0.5, 0.75, dom.a})
    suites = {
        "gegenbauer": lambda: suite_gegenbauer(dom, tol, seed, GEGENBAUER_LAMBDAS),
        "zonal": lambda: suite_zonal(dom, tol, seed, sorted({3, 4, 5, dom.dim})),
        "newton": lambda: suite_newton(dom, tol, seed, sorted({3, 4, 5, 7, dom.dim}), tr),
        "radial_derivative": lambda: suite_radial_derivative(
            dom, tol, seed, sorted({3, 4, 5, dom.dim}), tr),
        "coefficients": lambda: suite_coefficients(dom, tol, seed, radii=coef_radii),
        "neumann": lambda: suite_neumann(dom, tol, seed, tr, dims=sorted({3, 4, dom.dim})),
        "harmonicity": lambda: suite_harmonicity(dom, tol, seed, tr),
        "flux": lambda: suite_flux(dom, tol, seed, budget, tr),
        "exchange": lambda: suite_exchange(dom, tol, seed, tr),
        "mean": lambda: suite_mean(dom, tol, seed, budget, tr),
        "tail_bound": lambda: suite_tail_bound(dom, tol, seed, tr),
        "robin": lambda: suite_robin(dom, tol, seed, tr),
    }
    names = sorted(suites)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda k: suites[k](), names))
    else:
        results = [suites[k]() for k in names]
    report = VerificationReport(meta={
        "dimension": dom.dim, "inner_radius": dom.a, "seed": seed,
        "truncation": {"max_order": tr.max_order, "rel_tol": tr.rel_tol,
                       "adaptive": tr.adaptive},
        "quadrature": {"radial_nodes": budget.radial_nodes,
                       "sphere_samples": budget.sphere_samples,
                       "monte_carlo_seed": budget.monte_carlo_seed,
                       "monte_carlo_samples": budget.monte_carlo_samples},
        "tolerances": tol.as_dict(),
        "C0": dom.c0, "boundary_measure": dom.boundary_measure,
    })
    for checks in results:
        report.extend(_conditioning(dom, checks))
    if not dom.well_conditioned:
        report.add(CheckResult("conditioning", "a <= 0.95", dom.a, 0.95, FLAGGED,
                               "coefficient denominators ill-conditioned; hard checks relaxed"))
    return report
