"""Time the compiled series kernel against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--points 20000] [--repeat 3]

Both backends see the same seeded (rho, r, t) batch; the script also
reports the largest disagreement between them.
"""

import argparse
import time

import numpy as np

from annulus_green import _backend
from annulus_green.harmonics import surface_area

CASES = [
    ("H, N=3, a=0.5", _backend.H, 3, 0.5),
    ("H, N=5, a=0.5", _backend.H, 5, 0.5),
    ("H, N=3, a=0.9", _backend.H, 3, 0.9),
    ("DH_R, N=3, a=0.5", _backend.DH_R, 3, 0.5),
    ("NEWTON, N=3", _backend.NEWTON, 3, 0.0),
]


def batch(n, a, seed):
    rng = np.random.default_rng(seed)
    lo = a + 0.05 * (1 - a) if a > 0 else 0.2
    hi = 1.0 - 0.05 * (1 - a) if a > 0 else 1.0
    rho = rng.uniform(lo, hi, n)
    r = rng.uniform(lo, hi, n)
    t = rng.uniform(-1.0, 1.0, n)
    return rho, r, t


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--points", type=int, default=20000)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    impls = _backend.implementations()
    print(f"default backend: {_backend.BACKEND}; available: {', '.join(sorted(impls))}")
    print(f"{'case':<20}{'backend':<9}{'seconds':>10}{'us/point':>10}{'mean M':>8}{'max diff':>11}")
    for label, kind, n_dim, a in CASES:
        rho, r, t = batch(args.points, a, args.seed)
        c0 = 0.0
        if kind in (_backend.H, _backend.DH_R):
            omega = surface_area(n_dim)
            c0 = a ** (n_dim - 1) / ((n_dim - 2) * omega * (1 + a ** (n_dim - 1)))
        if kind == _backend.NEWTON:
            r = np.where(np.abs(r - rho) < 1e-9, r * 0.5, r)
        results = {}
        for name, fn in sorted(impls.items()):
            secs, out = best_time(lambda fn=fn: fn(kind, n_dim, a, surface_area(n_dim), rho, r, t,
                                                   4000, 1e-14, True, c0), args.repeat)
            results[name] = (secs, out)
        ref = results["python"][1][0]
        for name, (secs, out) in results.items():
            diff = float(np.max(np.abs(out[0] - ref)))
            print(f"{label:<20}{name:<9}{secs:>10.4f}{1e6 * secs / args.points:>10.2f}"
                  f"{float(np.mean(out[1])):>8.1f}{diff:>11.2e}")
        if "cython" in results:
            print(f"{'':<20}speed-up {results['python'][0] / results['cython'][0]:.1f}x")


if __name__ == "__main__":
    main()
