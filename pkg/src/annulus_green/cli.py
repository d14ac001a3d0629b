"""annulus-green: evaluate, scan and verify the Neumann Green function of an annulus.

Usage:
    annulus-green eval   --dim 3 --a 0.5 --x 0.75,0,0 --y 0,0.6,0
    annulus-green robin  --dim 3 --a 0.5 --rho-min 0.55 --rho-max 0.95 --points 50
    annulus-green scan   --dim 3 --a 0.5 --x 0.75,0,0 --n 101 --format csv --out slice.csv
    annulus-green coeffs --dim 3 --a 0.5 --rho 0.75 --m-max 20
    annulus-green verify --seed 7 --out report.json

Exit codes: 0 success, 1 verification failure, 2 usage or domain error, 3 I/O error.
Floats are written in shortest round-trip form, so CSV and JSON carry the
same numbers bit for bit.
"""

import argparse
import csv
import io
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConditioningWarning, DomainError
from .green_kernel import Annulus, coeff_A, coeff_B, green, green_batch, robin_radial
from .kernel_expansion import Truncation
from .quadrature import QuadratureSpec
from .verification import run_full_verification

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
NEAR_SINGULAR = 1e-3
DEFAULT_REPORT = "verification_report.json"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    domain: Annulus
    truncation: Truncation
    fmt: str = "json"
    out: str | None = None
    seed: int = 0
    workers: int = 1
    params: dict = field(default_factory=dict)


# -- parsing -----------------------------------------------------------------

def parse_point(text, n_dim, name):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"--{name}: expected comma-separated numbers, got {text!r}") from None
    if len(vals) != n_dim:
        raise UsageError(f"--{name} has {len(vals)} coordinates but --dim is {n_dim}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"--{name}: coordinates must be finite")
    return np.array(vals)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=3, help="space dimension N >= 3")
    common.add_argument("--a", type=float, default=0.5, help="inner radius, 0 < a < 1")
    common.add_argument("--trunc-max", type=int, default=4000, help="highest series order")
    common.add_argument("--trunc-tol", type=float, default=1e-14,
                        help="relative stopping tolerance of adaptive summation")
    common.add_argument("--fixed-order", action="store_true",
                        help="sum exactly to --trunc-max instead of stopping adaptively")
    common.add_argument("--format", choices=("csv", "json"), default="json", dest="fmt")
    common.add_argument("--out", default=None,
                        help=f"output file (default: stdout; verify writes {DEFAULT_REPORT})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    # fault injection for tests: flips the sign of C_0
    common.add_argument("--inject-c0-sign-fault", action="store_true", help=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="annulus-green", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="G, H and Gamma at one pair (x, y)")
    e.add_argument("--x", required=True)
    e.add_argument("--y", required=True)

    r = sub.add_parser("robin", parents=[common], help="Robin function on a radius grid")
    r.add_argument("--rho-min", type=float)
    r.add_argument("--rho-max", type=float)
    r.add_argument("--points", type=int, default=50)

    s = sub.add_parser("scan", parents=[common], help="G(x, .) on a planar slice")
    s.add_argument("--x", required=True)
    s.add_argument("--u", default=None, help="first slice direction (default e1)")
    s.add_argument("--v", default=None, help="second slice direction (default e2)")
    s.add_argument("--center", default=None, help="slice centre (default origin)")
    s.add_argument("--extent", type=float, default=1.0, help="half-width of the slice")
    s.add_argument("--n", type=int, default=101, help="grid points per side")

    c = sub.add_parser("coeffs", parents=[common], help="A_m and B_m at one |x|")
    c.add_argument("--rho", type=float, required=True)
    c.add_argument("--m-max", type=int, default=20)

    v = sub.add_parser("verify", parents=[common], help="run the verification harness")
    v.add_argument("--radial-nodes", type=int, default=32)
    v.add_argument("--sphere-samples", type=int, default=1024)
    v.add_argument("--mc-samples", type=int, default=200_000)
    return p


def make_config(ns):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConditioningWarning)
        dom = Annulus(ns.dim, ns.a)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if ns.inject_c0_sign_fault:
        dom = Annulus(dom.dim, dom.a, c0_override=-dom.c0, warn=False)
    tr = Truncation(ns.trunc_max, ns.trunc_tol, adaptive=not ns.fixed_order)
    if ns.workers < 1:
        raise UsageError("--workers must be >= 1")
    skip = {"dim", "a", "trunc_max", "trunc_tol", "fixed_order", "fmt", "out", "seed",
            "workers", "command", "inject_c0_sign_fault"}
    params = {k: v for k, v in vars(ns).items() if k not in skip}
    return RunConfig(ns.command, dom, tr, ns.fmt, ns.out, ns.seed, ns.workers, params)


# -- output ------------------------------------------------------------------

def _fmt_csv(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(columns, rows, fmt, single=False):
    """CSV text or JSON text of ``rows`` (lists aligned with ``columns``)."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt_csv(v) for v in row])
        return buf.getvalue()
    records = [dict(zip(columns, row)) for row in rows]
    payload = records[0] if single else records
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# -- commands ----------------------------------------------------------------

def cmd_eval(cfg):
    dom = cfg.domain
    x = parse_point(cfg.params["x"], dom.dim, "x")
    y = parse_point(cfg.params["y"], dom.dim, "y")
    for name, p in (("x", x), ("y", y)):
        if not dom.contains(float(np.linalg.norm(p))):
            raise DomainError(f"{name} lies outside the closed annulus")
    ev = green(x, y, dom, cfg.truncation)
    if not ev.reliable:
        print("warning: series not certified convergent at this pair", file=sys.stderr)
    cols = ["G", "H", "Gamma", "tail_estimate", "terms_used"]
    row = [ev.green, ev.regular_part, ev.singular_part, ev.tail_estimate, int(ev.terms_used)]
    emit(render(cols, [row], cfg.fmt, single=True), cfg.out)
    return EXIT_OK


def cmd_robin(cfg):
    dom = cfg.domain
    lo = cfg.params["rho_min"]
    hi = cfg.params["rho_max"]
    width = 1.0 - dom.a
    lo = dom.a + 0.1 * width if lo is None else lo
    hi = 1.0 - 0.1 * width if hi is None else hi
    n = cfg.params["points"]
    if n < 1 or lo > hi:
        raise UsageError("robin grid needs --points >= 1 and --rho-min <= --rho-max")
    grid = np.linspace(lo, hi, n)
    res = robin_radial(grid, dom, cfg.truncation)
    rows = [[float(g), float(v), float(t)]
            for g, v, t in zip(grid, res.value, res.tail_estimate)]
    emit(render(["rho", "tau", "tail"], rows, cfg.fmt), cfg.out)
    return EXIT_OK


def _slice_axes(cfg):
    n_dim = cfg.domain.dim
    eye = np.eye(n_dim)
    u = eye[0] if cfg.params["u"] is None else parse_point(cfg.params["u"], n_dim, "u")
    v = eye[1] if cfg.params["v"] is None else parse_point(cfg.params["v"], n_dim, "v")
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise UsageError("slice directions must be non-zero")
    u, v = u / nu, v / nv
    if abs(float(u @ v)) > 1e-12:
        raise UsageError("slice directions --u and --v must be orthogonal")
    c = (np.zeros(n_dim) if cfg.params["center"] is None
         else parse_point(cfg.params["center"], n_dim, "center"))
    return c, u, v


def scan_rows(cfg):
    dom = cfg.domain
    x = parse_point(cfg.params["x"], dom.dim, "x")
    if not dom.contains(float(np.linalg.norm(x)), closed=False):
        raise DomainError("x must lie strictly inside the annulus")
    c, u, v = _slice_axes(cfg)
    n = cfg.params["n"]
    ext = cfg.params["extent"]
    if n < 2 or not ext > 0:
        raise UsageError("scan needs --n >= 2 and --extent > 0")
    s = np.linspace(-ext, ext, n)
    ys = (c[None, None, :] + s[:, None, None] * u[None, None, :]
          + s[None, :, None] * v[None, None, :]).reshape(-1, dom.dim)
    rad = np.linalg.norm(ys, axis=1)
    inside = (rad >= dom.a) & (rad <= 1.0)
    near = np.linalg.norm(ys - x, axis=1) < NEAR_SINGULAR
    ys = ys[inside]
    near = near[inside]
    live = np.flatnonzero(~near)
    chunks = np.array_split(live, max(1, cfg.workers * 4)) if live.size else []

    def work(idx):
        g, h, _, tail, _, ok = green_batch(x, ys[idx], dom, cfg.truncation)
        return idx, g, h, tail, ok

    g = np.full(len(ys), np.nan)
    h, tail = g.copy(), g.copy()
    ok = np.ones(len(ys), dtype=bool)
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(i) for i in chunks]
    for idx, gv, hv, tv, okv in parts:
        g[idx], h[idx], tail[idx], ok[idx] = gv, hv, tv, okv
    rows = []
    for i, y in enumerate(ys):
        coords = [float(c) for c in y]
        if near[i]:
            rows.append(coords + [None, None, None, "near-singular"])
            continue
        flag = "" if ok[i] and np.isfinite(g[i]) else "unreliable"
        vals = [float(g[i]), float(h[i]), float(tail[i])]
        if not all(math.isfinite(t) for t in vals):
            vals = [t if math.isfinite(t) else None for t in vals]
            flag = "unreliable"
        rows.append(coords + vals + [flag])
    cols = [f"y{k + 1}" for k in range(dom.dim)] + ["G", "H", "tail", "flag"]
    return cols, rows


def cmd_scan(cfg):
    cols, rows = scan_rows(cfg)
    emit(render(cols, rows, cfg.fmt), cfg.out)
    return EXIT_OK


def cmd_coeffs(cfg):
    dom = cfg.domain
    rho = cfg.params["rho"]
    if cfg.params["m_max"] < 1:
        raise UsageError("--m-max must be >= 1")
    rows = [[m, coeff_A(m, dom, rho), coeff_B(m, dom, rho)]
            for m in range(1, cfg.params["m_max"] + 1)]
    emit(render(["m", "A", "B"], rows, cfg.fmt), cfg.out)
    return EXIT_OK


def cmd_verify(cfg):
    p = cfg.params
    budget = QuadratureSpec(p["radial_nodes"], p["sphere_samples"], cfg.seed, p["mc_samples"])
    report = run_full_verification(cfg.domain, budget, cfg.truncation, cfg.seed, cfg.workers)
    emit(report.to_json(), cfg.out or DEFAULT_REPORT)
    summary = report.to_dict()["summary"]
    print(f"{summary['checks']} checks, {len(summary['failures'])} failed, "
          f"{len(summary['flagged'])} flagged", file=sys.stderr)
    for name in summary["failures"]:
        print(f"FAIL {name}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


COMMANDS = {"eval": cmd_eval, "robin": cmd_robin, "scan": cmd_scan,
            "coeffs": cmd_coeffs, "verify": cmd_verify}


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = make_config(ns)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
