import math

import numpy as np
import pytest

from annulus_green import (BranchError, DomainError, EvalPoint, SingularityError, Truncation,
                           convergence_ratio, fundamental_solution, newton_kernel_direct,
                           newton_kernel_series, radial_derivative_direct,
                           radial_derivative_series, surface_area, truncation_bound)


def test_eval_point_is_immutable():
    p = EvalPoint([3.0, 4.0, 0.0])
    assert p.radius == 5.0
    assert np.allclose(p.direction, [0.6, 0.8, 0.0])
    with pytest.raises(AttributeError):
        p.radius = 1.0
    with pytest.raises(ValueError):
        p.coords[0] = 1.0


def test_eval_point_origin_and_rotation():
    assert EvalPoint([0.0, 0.0, 0.0]).direction is None
    rot = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    q = EvalPoint([1.0, 0.0, 0.0]).rotated(rot)
    assert np.allclose(q.coords, [0.0, 1.0, 0.0])


def test_eval_point_rejects_nonfinite():
    with pytest.raises(DomainError):
        EvalPoint([np.nan, 0.0, 0.0])


def test_truncation_validation():
    assert Truncation(max_order=0).max_order == 0
    with pytest.raises(DomainError):
        Truncation(max_order=-1)
    with pytest.raises(DomainError):
        Truncation(rel_tol=0.0)
    f = Truncation().fixed(17)
    assert f.max_order == 17 and not f.adaptive


def test_newton_series_frozen_example():
    # 1/|x-y| with |x|=1, |y|=1/2 along the same ray is exactly 2
    res = newton_kernel_series([1.0, 0, 0], [0.5, 0, 0], 3)
    assert res.value == pytest.approx(2.0, rel=1e-15)
    assert res.tail_estimate < 1e-14


def test_newton_series_order_zero_keeps_monopole():
    res = newton_kernel_series([1.0, 0, 0], [0, 0.5, 0], 3, Truncation(max_order=0))
    assert res.value == 1.0
    assert res.terms_used == 0


@pytest.mark.parametrize("n", [3, 4, 5, 7])
def test_newton_series_matches_direct(n, rng):
    for _ in range(20):
        x = rng.standard_normal(n)
        x *= rng.uniform(0.3, 1.0) / np.linalg.norm(x)
        y = rng.standard_normal(n)
        y *= 0.7 * np.linalg.norm(x) / np.linalg.norm(y)
        exact = newton_kernel_direct(x, y, n)
        res = newton_kernel_series(x, y, n)
        assert abs(res.value - exact) <= 1e-10 * exact
        assert abs(res.value - exact) <= res.error_bound + 1e-15 * exact


def test_newton_series_branch_swap(rng):
    x = np.array([0.8, 0.1, 0.0])
    y = np.array([0.0, 0.3, 0.2])
    assert newton_kernel_series(x, y, 3).value == pytest.approx(
        newton_kernel_series(y, x, 3).value, rel=1e-14)


def test_newton_series_errors():
    with pytest.raises(SingularityError, match="coincident points"):
        newton_kernel_series([0.5, 0, 0], [0.5, 0, 0], 3)
    with pytest.raises(BranchError):
        newton_kernel_series([0.5, 0, 0], [0, 0.5, 0], 3)
    with pytest.raises(DomainError):
        newton_kernel_series([0.5, 0], [0, 0.2, 0], 3)


def test_fundamental_solution_normalisation():
    # N=3: 1/(4 pi |z|)
    assert fundamental_solution([1.0, 0, 0], [0, 0, 0], 3) == pytest.approx(1 / (4 * math.pi))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_radial_derivative_series_both_branches(n, rng):
    for scale in (0.6, 1.5):
        x = rng.standard_normal(n)
        x *= 0.6 / np.linalg.norm(x)
        y = rng.standard_normal(n)
        y *= scale * 0.6 / np.linalg.norm(y)
        exact = radial_derivative_direct(x, y, n)
        res = radial_derivative_series(x, y, n)
        assert res.value == pytest.approx(exact, rel=1e-11, abs=1e-13)


def test_radial_derivative_outer_monopole():
    # the m=0 outer term alone is the flux of a point mass: -1/(omega r^(N-1))
    res = radial_derivative_series([0.1, 0, 0], [0, 0.9, 0], 3, Truncation(max_order=0))
    assert res.value == pytest.approx(-1 / (surface_area(3) * 0.81), rel=1e-15)


def test_radial_derivative_rejects_origin_and_equal_radii():
    with pytest.raises(DomainError):
        radial_derivative_series([0.5, 0, 0], [0, 0, 0], 3)
    with pytest.raises(BranchError):
        radial_derivative_series([0.5, 0, 0], [0, 0.5, 0], 3)


def test_convergence_ratio_and_bound():
    assert convergence_ratio(0.75, 0.6, 0.5) == pytest.approx(0.555555555, rel=1e-8)
    b = truncation_bound(5, 0.75, 0.6, 0.5, 3)
    assert b.certified and b.ratio < 1
    assert not truncation_bound(5, 0.5, 0.5, 0.5, 3).certified
    with pytest.raises(DomainError):
        truncation_bound(0, 0.75, 0.6, 0.5, 3)


def test_truncation_bound_decays_geometrically():
    envs = [truncation_bound(m, 0.75, 0.9, 0.5, 3).envelope for m in range(5, 60, 5)]
    assert all(b < a for a, b in zip(envs, envs[1:]))
