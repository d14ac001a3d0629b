import json
import math
import warnings

import numpy as np
import pytest

from annulus_green import Annulus, ConditioningWarning, GeometryError
from annulus_green.quadrature import QuadratureSpec
from annulus_green.verification import (FAIL, FLAGGED, PASS, REPORT, CheckResult,
                                        VerificationReport, boundary_scan, convergence_order,
                                        fd_laplacian, flux_probe, mean_closed_form,
                                        suite_coefficients, suite_exchange, suite_harmonicity,
                                        suite_mean, suite_radial_derivative, suite_tail_bound)
from annulus_green.tolerances import DEFAULT, Tolerances


def test_fd_laplacian_of_quadratic_is_exact():
    def f(p):
        return np.sum(p * p, axis=1)

    assert fd_laplacian(f, [0.3, 0.2, 0.1], 1e-2) == pytest.approx(6.0, rel=1e-9)


def test_fd_laplacian_order_on_non_harmonic_quartic():
    def f(p):
        return p[:, 0] ** 4

    hs = np.array([1e-1, 5e-2, 2.5e-2])
    res = [fd_laplacian(f, [0.5, 0, 0], h) - 12 * 0.25 for h in hs]
    assert convergence_order(hs, res) == pytest.approx(2.0, abs=0.05)


def test_fd_laplacian_guards_the_annulus(dom3):
    with pytest.raises(GeometryError):
        fd_laplacian(lambda p: p[:, 0], [0.51, 0, 0], 0.02, dom3)


def test_report_json_schema_and_sorting():
    rep = VerificationReport(meta={"seed": 0})
    rep.add(CheckResult("zeta", 0.0, float("inf"), 1.0, FAIL))
    rep.add(CheckResult("alpha", 0.0, np.float64(0.5), 1.0, PASS, "ok"))
    with pytest.raises(ValueError):
        rep.add(CheckResult("alpha", 0.0, 0.0, 1.0, PASS))
    d = json.loads(rep.to_json())
    assert [c["name"] for c in d["checks"]] == ["alpha", "zeta"]
    assert set(d["checks"][0]) == {"name", "target", "measured", "tolerance", "status", "notes"}
    assert d["checks"][1]["measured"] == "inf"
    assert not rep.passed and rep.failures == ["zeta"]


def test_flagged_and_report_do_not_fail():
    rep = VerificationReport()
    rep.add(CheckResult("a", 0, 1, 0, FLAGGED))
    rep.add(CheckResult("b", 0, 1, None, REPORT))
    assert rep.passed and rep.flagged == ["a"]


def test_flux_probe_linearity(dom3):
    x = np.array([0.0, 0.75, 0.0])
    quad = QuadratureSpec(sphere_samples=512)
    g = flux_probe(x, dom3, 1e-2, quad)
    s = flux_probe(x, dom3, 1e-2, quad, field="singular")
    h = flux_probe(x, dom3, 1e-2, quad, field="regular")
    assert g == pytest.approx(-1.0, abs=1e-3)
    assert abs(h) <= 1e-6
    assert abs(s - h - g) <= 1e-9
    with pytest.raises(GeometryError):
        flux_probe([0.505, 0, 0], dom3, 1e-2, quad)
    with pytest.raises(ValueError):
        flux_probe(x, dom3, 1e-2, quad, field="other")


def test_boundary_scan_statuses(dom3):
    checks = boundary_scan([0.0, 0.7, 0.1], dom3, 200)
    by_status = {c.status for c in checks}
    assert FAIL not in by_status
    assert any(c.name.startswith("neumann_x") and c.status == REPORT for c in checks)


def test_boundary_scan_detects_wrong_c0(dom3):
    bad = Annulus(3, 0.5, c0_override=-dom3.c0)
    checks = boundary_scan([0.0, 0.7, 0.1], bad, 200)
    assert any(c.status == FAIL for c in checks)


def test_small_suites_pass(dom3):
    for suite in (suite_coefficients, suite_radial_derivative, suite_exchange,
                  suite_harmonicity, suite_tail_bound):
        for c in suite(dom3, DEFAULT, 0):
            assert c.status in (PASS, REPORT), c


def test_mean_suite_reports_nonzero_mean(dom3):
    quad = QuadratureSpec(monte_carlo_samples=20000)
    checks = {c.name: c for c in suite_mean(dom3, DEFAULT, 0, quad)}
    table = checks["mean_over_y.zero_average_claim"].measured
    assert checks["mean_over_y.zero_average_claim"].status == REPORT
    for row in table:
        assert row["product"] == pytest.approx(mean_closed_form(dom3, row["rho"]), rel=1e-12)
        assert row["product"] > 0.05
    assert all(c.status != FAIL for c in checks.values())


def test_tolerances_are_frozen():
    with pytest.raises(Exception):
        DEFAULT.neumann_abs = 1.0
    assert Tolerances(neumann_abs=1e-3).as_dict()["neumann_abs"] == 1e-3
