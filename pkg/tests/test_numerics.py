import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relsat.errors import QuadratureError, RootFindingError
from relsat.numerics import QuadratureResult, RootBracket, find_root, integrate


def flat_sweep_closed_form(kappa, r1, r2):
    s = math.sqrt(kappa)
    return (math.asin(s / r1) - math.asin(s / r2)) / s


def flat_sweep_integrand(kappa):
    return lambda r: 1.0 / (r * r * math.sqrt(1.0 - kappa / (r * r)))


def test_polynomial():
    res = integrate(lambda x: x * x, 0.0, 1.0, 1e-12)
    assert res.value == pytest.approx(1.0 / 3.0, rel=1e-14, abs=0)
    assert res.abs_error_estimate >= 0
    assert res.evaluations > 0


@pytest.mark.parametrize("sqrt_kappa", [5.8597e6, 6.3575e6])
def test_flat_sweep_against_arcsin(sqrt_kappa):
    kappa = sqrt_kappa ** 2
    r1, r2 = 6.371e6, 8.371e6
    res = integrate(flat_sweep_integrand(kappa), r1, r2, 1e-12)
    expected = flat_sweep_closed_form(kappa, r1, r2)
    assert res.value == pytest.approx(expected, rel=1e-12, abs=0)


def test_deterministic():
    f = flat_sweep_integrand(6.3575e6 ** 2)
    assert integrate(f, 6.371e6, 8.371e6) == integrate(f, 6.371e6, 8.371e6)


def test_non_finite_reports_abscissa():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: 1.0 / x if x != 0.5 else math.inf, 0.0, 1.0)
    assert info.value.abscissa == 0.5


def test_budget_exhaustion_carries_partial():
    # divergent at the left end: bisection depth runs out
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: 1.0 / x, 0.0, 1.0, 1e-12)
    assert math.isfinite(info.value.partial)
    assert info.value.partial > 40.0


def test_bad_interval():
    with pytest.raises(ValueError):
        integrate(lambda x: x, 1.0, 0.0)


def test_result_invariants():
    with pytest.raises(ValueError):
        QuadratureResult(1.0, -1.0, 3)
    with pytest.raises(ValueError):
        RootBracket(1.0, 1.0)


polys = st.lists(st.floats(-5, 5), min_size=1, max_size=6)


def poly(coeffs):
    return lambda x: sum(c * x ** i for i, c in enumerate(coeffs))


@settings(max_examples=50, deadline=None)
@given(polys, polys, st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(p, q, alpha, beta):
    tol = 1e-12
    lhs = integrate(lambda x: alpha * poly(p)(x) + beta * poly(q)(x), -1.0, 2.0, tol).value
    rhs = alpha * integrate(poly(p), -1.0, 2.0, tol).value + beta * integrate(poly(q), -1.0, 2.0, tol).value
    scale = max(abs(alpha) * sum(abs(c) * 2 ** i for i, c in enumerate(p))
                + abs(beta) * sum(abs(c) * 2 ** i for i, c in enumerate(q)), 1.0)
    assert abs(lhs - rhs) <= 10 * tol * 3 * scale


@settings(max_examples=50, deadline=None)
@given(polys, st.floats(0.05, 0.95))
def test_interval_additivity(p, frac):
    tol = 1e-12
    a, c = -1.0, 2.0
    b = a + frac * (c - a)
    whole = integrate(poly(p), a, c, tol).value
    parts = integrate(poly(p), a, b, tol).value + integrate(poly(p), b, c, tol).value
    scale = max(sum(abs(co) * 2 ** i for i, co in enumerate(p)) * 3, 1.0)
    assert abs(whole - parts) <= 10 * tol * scale


def test_sqrt2():
    x = find_root(lambda x: x * x - 2.0, RootBracket(1.0, 2.0))
    assert x == pytest.approx(math.sqrt(2.0), rel=1e-12, abs=0)


def test_no_sign_change():
    with pytest.raises(RootFindingError):
        find_root(lambda x: x * x + 1.0, RootBracket(0.0, 1.0))


def test_root_at_endpoint():
    assert find_root(lambda x: x, RootBracket(0.0, 1.0)) == 0.0


@settings(max_examples=100, deadline=None)
@given(st.floats(-10, 10), st.floats(0.01, 5), st.floats(0.01, 5), st.integers(1, 3))
def test_root_inside_bracket(root, left, right, power):
    lo, hi = root - left, root + right
    x = find_root(lambda x: (x - root) ** (2 * power - 1), RootBracket(lo, hi), 1e-12)
    assert lo <= x <= hi
    assert abs(x - root) <= 1e-6 * max(1.0, abs(root)) ** 1
