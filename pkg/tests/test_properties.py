import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from annulus_green import (Annulus, gegenbauer, green, newton_kernel_direct,
                           newton_kernel_series, normal_derivative_in_y, symmetry_defect)
from annulus_green.cli import _fmt_csv

DOM = Annulus(3, 0.5)
finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
unit = st.lists(st.floats(-1, 1), min_size=3, max_size=3).filter(
    lambda v: np.linalg.norm(v) > 1e-3).map(lambda v: np.array(v) / np.linalg.norm(v))
radius = st.floats(0.53, 0.97)


@given(st.integers(0, 60), st.sampled_from([0.5, 1.0, 1.5, 2.5]), st.floats(-1, 1))
def test_gegenbauer_bounded_by_endpoint(m, lam, t):
    assert abs(gegenbauer(m, lam, t)) <= gegenbauer(m, lam, 1.0) * (1 + 1e-12)


@settings(max_examples=60, deadline=None)
@given(unit, unit, st.floats(0.2, 1.0), st.floats(0.05, 0.8))
def test_newton_series_property(u, v, r_big, ratio):
    x, y = r_big * u, ratio * r_big * v
    if np.allclose(x, y):
        return
    exact = newton_kernel_direct(x, y, 3)
    assert abs(newton_kernel_series(x, y, 3).value - exact) <= 1e-10 * exact


@settings(max_examples=60, deadline=None)
@given(unit, unit, radius, radius)
def test_exchange_identity_property(u, v, rx, ry):
    x, y = rx * u, ry * v
    if np.linalg.norm(x - y) < 1e-6:
        return
    d = symmetry_defect(x, y, DOM)
    assert abs(d.measured - d.predicted) <= d.bound + 1e-15


@settings(max_examples=40, deadline=None)
@given(unit, unit, st.floats(0.6, 0.9), st.sampled_from([0.5, 1.0]))
def test_neumann_property(u, v, rx, side):
    if math.acos(np.clip(u @ v, -1, 1)) < 0.3:
        return
    res = normal_derivative_in_y(rx * u, side * v, DOM, gamma_route="direct")
    assert abs(res.value + 1 / DOM.boundary_measure) <= 1e-6


@settings(max_examples=40, deadline=None)
@given(unit, unit, radius, radius)
def test_green_symmetric_in_direction_swap(u, v, rx, ry):
    # same radii, directions exchanged: H only sees u.v, Gamma only |x - y|
    x, y = rx * u, ry * v
    x2, y2 = rx * v, ry * u
    if np.linalg.norm(x - y) < 1e-6:
        return
    assert math.isclose(green(x, y, DOM).green, green(x2, y2, DOM).green,
                        rel_tol=1e-11, abs_tol=1e-14)


@given(finite)
def test_csv_float_text_round_trips(v):
    assert float(_fmt_csv(float(v))) == float(v)
