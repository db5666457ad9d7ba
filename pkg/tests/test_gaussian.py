import math
import random

import pytest

from mlthreshold.gaussian import (
    ERROR_PROBABILITY, INCREASING_SET, BoundCurveSpec, bound_curve, central_difference, psi,
    stated_threshold_slope, std_normal_cdf, std_normal_quantile, theorem1_bound, theorem2_bound,
    theorem2_slope,
)


def test_cdf_basics():
    assert std_normal_cdf(0.0) == 0.5
    rng = random.Random(1)
    for _ in range(200):
        x = rng.uniform(-10, 10)
        assert std_normal_cdf(x) == pytest.approx(1.0 - std_normal_cdf(-x), abs=1e-15)
    # mpmath quadrature of the density: 0.950004782531653700
    assert std_normal_cdf(1.6449) == pytest.approx(0.9500047825316537, abs=1e-12)


def test_cdf_tails_and_monotone():
    assert std_normal_cdf(-8) < 1e-14
    assert std_normal_cdf(8) > 1 - 1e-14
    xs = [i / 10 for i in range(-90, 91)]
    vals = [std_normal_cdf(x) for x in xs]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_quantile_round_trip():
    assert std_normal_quantile(0.5) == 0.0
    us = [10 ** -e for e in range(6, 0, -1)] + [i / 100 for i in range(1, 100)]
    us += [1 - u for u in us[:6]]
    for u in us:
        assert abs(std_normal_cdf(std_normal_quantile(u)) - u) <= 1e-10


@pytest.mark.parametrize("u", [0.0, 1.0, -0.5, 2.0])
def test_quantile_rejects(u):
    with pytest.raises(ValueError):
        std_normal_quantile(u)


@pytest.mark.parametrize("u", [0.01, 0.2, 0.5, 0.77, 0.999])
def test_psi_inverts_quantile_derivative(u):
    deriv = central_difference(std_normal_quantile, u, h=1e-7 * min(u, 1 - u))
    assert psi(u) * deriv == pytest.approx(1.0, abs=1e-6)


def test_theorem1_bound():
    spec = BoundCurveSpec(200, 0.3, INCREASING_SET)
    assert theorem1_bound(0.3, spec) == pytest.approx(0.5, abs=1e-15)
    assert theorem1_bound(0.25, spec) < 0.5
    vals = [theorem1_bound(i / 100, spec) for i in range(1, 100)]
    assert all(a < b for a, b in zip(vals, vals[1:]) if a < 1 - 1e-12 and b > 1e-300)
    with pytest.raises(ValueError):
        theorem1_bound(0.0, spec)
    with pytest.raises(ValueError):
        theorem1_bound(0.5, BoundCurveSpec(200, 0.3))


def test_theorem2_bound_shape():
    spec = BoundCurveSpec(400, 0.7, ERROR_PROBABILITY)
    assert abs(theorem2_bound(0.7, spec) - 0.5) <= 1e-12
    assert all(theorem2_bound(i / 100, spec) < 1e-3 for i in range(1, 56))
    assert all(theorem2_bound(i / 100, spec) > 1 - 1e-3 for i in range(80, 100))
    vals = [theorem2_bound(i / 1000, spec) for i in range(1, 1000)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        theorem2_bound(1.0, spec)


def test_sharper_with_larger_gap():
    for pc in (0.2, 0.5, 0.7):
        lo, hi = BoundCurveSpec(50, pc), BoundCurveSpec(400, pc)
        for i in range(1, 100):
            p = i / 100
            if abs(p - pc) > 1e-12:
                assert abs(theorem2_bound(p, hi) - 0.5) >= abs(theorem2_bound(p, lo) - 0.5)


def test_theorem2_exact_slope_matches_finite_difference():
    spec = BoundCurveSpec(400, 0.7)
    fd = central_difference(lambda p: theorem2_bound(p, spec), 0.7)
    assert fd == pytest.approx(theorem2_slope(spec), rel=1e-6)
    assert fd == pytest.approx(12.1194, abs=1e-3)


def test_stated_slope_value():
    assert stated_threshold_slope(400, 0.7) == pytest.approx(26.596152026762, rel=1e-12)
    # the two agree only where 2 sqrt(-ln(1 - p_c)) = 1
    pc = 1 - math.exp(-0.25)
    assert stated_threshold_slope(400, pc) == pytest.approx(theorem2_slope(BoundCurveSpec(400, pc)))


def test_bound_curve_grid():
    pts = bound_curve(BoundCurveSpec(400, 0.7), steps=20)
    assert [p for p, _ in pts] == [i / 20 for i in range(1, 20)]


@pytest.mark.parametrize("gap,pivot", [(0, 0.5), (-1, 0.5), (10, 0.0), (10, 1.0)])
def test_spec_validation(gap, pivot):
    with pytest.raises(ValueError):
        BoundCurveSpec(gap, pivot)
