"""The eleven acceptance criteria, each at its stated tolerance.

Every test prints one line ``[criterion k] PASS|FAIL name: detail``, also
under pytest's output capture. ``python3 tests/test_acceptance.py`` runs the
same checks without pytest.
"""

import json
import sys
import warnings

import numpy as np
import pytest

from annulus_green import Annulus
from annulus_green.cli import main as cli_main
from annulus_green.quadrature import QuadratureSpec
from annulus_green.tolerances import DEFAULT
from annulus_green.verification import (FAIL, PASS, REPORT, run_full_verification,
                                        suite_coefficients, suite_exchange, suite_flux,
                                        suite_gegenbauer, suite_harmonicity, suite_mean,
                                        suite_newton, suite_neumann, suite_radial_derivative,
                                        suite_zonal)

SEED = 0
DOM = Annulus(3, 0.5)


def _announce(k, title, ok, detail, capsys=None):
    line = f"[criterion {k:>2}] {'PASS' if ok else 'FAIL'} {title}: {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def _worst(checks, prefix=""):
    vals = []
    for c in checks:
        if c.name.startswith(prefix) and isinstance(c.measured, (int, float)):
            vals.append(c.measured)
    return max(vals) if vals else float("nan")


def _hard_ok(checks):
    return all(c.status in (PASS, REPORT) for c in checks)


def criterion_1():
    checks = suite_gegenbauer(DOM, DEFAULT, SEED, [0.5, 1.0, 1.5, 2.5])
    return _hard_ok(checks), f"max rel err {_worst(checks):.2e} <= {DEFAULT.gegenbauer_rel:g}"


def criterion_2():
    checks = suite_zonal(DOM, DEFAULT, SEED, [3, 4, 5])
    return _hard_ok(checks), f"max abs err {_worst(checks):.2e} <= {DEFAULT.zonal_explicit_abs:g}"


def criterion_3():
    checks = suite_newton(DOM, DEFAULT, SEED, [3, 4, 5, 7])
    err = _worst(checks, "newton.series_vs_direct")
    return _hard_ok(checks), f"max rel err {err:.2e} <= {DEFAULT.newton_series_rel:g}"


def criterion_4():
    checks = suite_radial_derivative(DOM, DEFAULT, SEED, [3, 4, 5])
    err = _worst(checks)
    return _hard_ok(checks), f"max |series - FD| {err:.2e} <= {DEFAULT.radial_derivative_abs:g}"


def criterion_5():
    checks = suite_coefficients(DOM, DEFAULT, SEED, [3, 4], [0.25, 0.5, 0.75])
    rel = _worst(checks, "coefficients.closed_vs_cramer")
    res = _worst(checks, "coefficients.boundary_residual")
    return _hard_ok(checks), f"max rel diff {rel:.2e}, max residual {res:.2e}"


def criterion_6():
    checks = suite_neumann(DOM, DEFAULT, SEED, dims=[3, 4])
    hard = [c for c in checks if c.name.startswith("neumann_y") and ".cone" not in c.name
            and "within_10x" not in c.name]
    worst = max(c.measured["max_residual"] for c in hard)
    ok = all(c.status == PASS for c in hard)
    return ok, f"max residual {worst:.2e} <= {DEFAULT.neumann_abs:g} over {len(hard)} scans"


def criterion_7():
    checks = suite_harmonicity(DOM, DEFAULT, SEED)
    orders = [o for c in checks if c.name.endswith(".order") for o in c.measured]
    return _hard_ok(checks), f"orders in [{min(orders):.3f}, {max(orders):.3f}], target 2.0 +- 0.2"


def criterion_8():
    checks = suite_flux(DOM, DEFAULT, SEED, QuadratureSpec())
    fluxes = [c.measured for c in checks if c.name.startswith("flux.green")]
    err = max(abs(f + 1.0) for f in fluxes)
    return _hard_ok(checks), f"max |flux + 1| {err:.2e} <= {DEFAULT.flux_abs:g}"


def criterion_9():
    checks = suite_exchange(DOM, DEFAULT, SEED)
    d = {c.name: c.measured for c in checks}
    return _hard_ok(checks), (f"defect/bound {d['exchange.defect_matches_C0_term']:.3f} <= 1, "
                              f"equal radii {d['exchange.equal_radii']:.1e}")


def criterion_10():
    checks = suite_mean(DOM, DEFAULT, SEED, QuadratureSpec())
    gap = _worst(checks, "mean_over_y.schemes_agree")
    table = next(c.measured for c in checks if c.status == REPORT)
    vals = ", ".join(f"rho={row['rho']:.2f}: {row['product']:.6f}" for row in table)
    return _hard_ok(checks), f"scheme gap {gap:.1e} <= {DEFAULT.mean_scheme_abs:g}; mean {vals}"


def criterion_11(tmp_dir):
    reports = [run_full_verification(DOM, seed=SEED, workers=w).to_json() for w in (1, 1, 4)]
    same_verify = reports[0] == reports[1] == reports[2]
    passed = json.loads(reports[0])["summary"]["passed"]
    outs = []
    for w in ("1", "1", "3"):
        path = f"{tmp_dir}/scan_{len(outs)}.csv"
        cli_main(["scan", "--x", "0.75,0,0", "--n", "101", "--format", "csv",
                  "--workers", w, "--out", path])
        with open(path, "rb") as fh:
            outs.append(fh.read())
    same_scan = outs[0] == outs[1] == outs[2]
    ok = same_verify and same_scan and passed
    return ok, (f"verify identical={same_verify} (full run passed={passed}), "
                f"scan identical={same_scan}, incl. parallel workers")


TITLES = {
    1: "Gegenbauer recurrence vs exact oracle",
    2: "zonal harmonic equivalence",
    3: "Newton kernel series",
    4: "radial-derivative series vs finite differences",
    5: "coefficient double entry",
    6: "Neumann condition in y",
    7: "harmonicity of H in x and y",
    8: "Dirac mass via flux probe",
    9: "exchange identity",
    10: "mean over y (scheme agreement, report-only value)",
    11: "determinism",
}
CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10}


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k]()
    assert _announce(k, TITLES[k], ok, detail, capsys), detail


def test_criterion_11_determinism(tmp_path, capsys):
    ok, detail = criterion_11(str(tmp_path))
    assert _announce(11, TITLES[11], ok, detail, capsys), detail


if __name__ == "__main__":
    import tempfile

    warnings.simplefilter("default")
    results = []
    for k in sorted(CRITERIA):
        results.append(_announce(k, TITLES[k], *CRITERIA[k]()))
    with tempfile.TemporaryDirectory() as d:
        results.append(_announce(11, TITLES[11], *criterion_11(d)))
    sys.exit(0 if all(results) else 1)
