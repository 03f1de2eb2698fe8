"""Tests for the disk eigenvalue branches and the ground-state envelope."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magsteklov import disk, verify
from magsteklov.numerics import DEFAULT_TOL, DomainError, central_diff

# ----------------------------------------------------------------- oracles


def series(a, c, z, terms=80):
    total, term = 1.0, 1.0
    for k in range(terms):
        term *= (a + k) * z / ((c + k) * (k + 1.0))
        total += term
    return total


def lambda_oracle(n, b, terms=120):
    """Branch eigenvalue assembled from raw float series; small |b| only."""
    ratio = 0.5 / (n + 1.0) * series(1.5, n + 2.0, b, terms) / series(0.5, n + 1.0, b, terms)
    return n - b + 2.0 * b * ratio


def crossing_oracle(n, lo, hi, terms=30):
    """Bisection on the truncated series of M(-1/2, n+1, z)."""
    f = lambda z: series(-0.5, n + 1.0, z, terms)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if f(lo) * f(mid) <= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


Z0_ORACLE = crossing_oracle(0, 1.5, 1.7)  # ~1.57996


# ----------------------------------------------------------------- branches


class TestLambdaN:
    def test_zero_field_returns_mode(self):
        for n in (0, 1, 5, 40):
            assert disk.lambda_n(n, 0.0) == float(n)

    def test_zero_iff_origin(self):
        assert disk.lambda_n(0, 0.0) == 0.0
        assert disk.lambda_n(0, 1e-3) > 0.0
        assert disk.lambda_n(1, 0.0) > 0.0

    def test_mode_zero_small_field(self):
        value = disk.lambda_n(0, 1.0)
        assert 0.0 < value < 1.0
        assert value == pytest.approx(lambda_oracle(0, 1.0), rel=1e-12)

    def test_cross_check_against_radial_route(self):
        for n, b in ((0, 1.0), (2, 3.0), (5, 2.5)):
            assert disk.lambda_n(n, b) == pytest.approx(
                disk.radial_log_derivative(n, b), abs=1e-6
            )

    def test_negative_field_against_alternating_series(self):
        # at small |b| the raw alternating series is still trustworthy
        expected = lambda_oracle(3, -1.0)
        assert disk.lambda_n(3, -1.0) == pytest.approx(expected, rel=1e-11)

    def test_extreme_field_mode_zero(self):
        # lambda_0(b) = b - 1 + O(1/b) from the ratio asymptotics; checks the
        # scaled series survives a value of size exp(1e5)
        b = 1e5
        assert disk.lambda_n(0, b) == pytest.approx(b - 1.0, abs=1e-3)
        assert disk.lambda_n(0, -b) == pytest.approx(b - 1.0, abs=1e-3)

    def test_mode_validation(self):
        with pytest.raises(DomainError):
            disk.lambda_n(-1, 1.0)


class TestLambdaMinusN:
    def test_zero_field_symmetric(self):
        assert disk.lambda_minus_n(1, 0.0) == 1.0

    def test_dominates_positive_branch(self):
        assert disk.lambda_minus_n(1, 2.0) >= disk.lambda_n(1, 2.0)

    def test_equals_reflected_argument(self):
        assert disk.lambda_minus_n(3, 1.0) == pytest.approx(disk.lambda_n(3, -1.0), rel=1e-14)

    def test_needs_positive_mode(self):
        with pytest.raises(DomainError):
            disk.lambda_minus_n(0, 1.0)


class TestRadialSolution:
    def test_zero_field_harmonics(self):
        for r in (0.2, 0.7, 1.0):
            assert disk.radial_solution(0, 0.0, r) == pytest.approx(1.0, rel=1e-14)
            assert disk.radial_solution(1, 0.0, r) == pytest.approx(r, rel=1e-14)

    def test_boundary_value_against_laguerre(self):
        from magsteklov.specfun import laguerre

        expected = math.exp(-0.5) * laguerre(-0.5, 0.0, 1.0)
        assert disk.radial_solution(0, 1.0, 1.0) == pytest.approx(expected, rel=1e-13)

    def test_ode_residual(self):
        # -v'' - v'/r + (b r - n/r)^2 v = 0 probed by finite differences
        n, b = 2, 1.5
        for r in (0.4, 0.6, 0.85):
            v = disk.radial_solution(n, b, r)
            vp = central_diff(lambda x: disk.radial_solution(n, b, x), r)
            vpp = central_diff(lambda x: disk.radial_solution(n, b, x), r, order=2)
            residual = -vpp - vp / r + (b * r - n / r) ** 2 * v
            assert abs(residual) <= 1e-6 * max(1.0, abs(v))

    def test_radius_domain(self):
        with pytest.raises(DomainError):
            disk.radial_solution(0, 1.0, 0.0)
        with pytest.raises(DomainError):
            disk.radial_solution(0, 1.0, 1.5)


class TestRadialLogDerivative:
    def test_constant_solution(self):
        assert disk.radial_log_derivative(0, 0.0) == pytest.approx(0.0, abs=1e-9)

    def test_linear_solution(self):
        assert disk.radial_log_derivative(1, 0.0) == pytest.approx(1.0, abs=1e-9)

    def test_agrees_with_eigenvalue(self):
        assert disk.radial_log_derivative(2, 3.0) == pytest.approx(
            disk.lambda_n(2, 3.0), abs=1e-6
        )


# -------------------------------------------------------------- derivatives


class TestLambdaPrime:
    def test_zero_at_previous_crossing(self):
        assert disk.lambda_n_prime(1, Z0_ORACLE) == pytest.approx(0.0, abs=1e-8)

    def test_negative_before_crossing(self):
        assert disk.lambda_n_prime(1, 0.5) < 0.0
        assert disk.lambda_n_prime(1, Z0_ORACLE + 0.5) > 0.0

    def test_matches_finite_difference(self):
        fd = central_diff(lambda z: disk.lambda_n(2, z), 10.0)
        assert disk.lambda_n_prime(2, 10.0) == pytest.approx(fd, rel=1e-6)

    def test_two_closed_forms_agree(self):
        for n, z in ((1, 0.8), (3, 4.0), (10, 25.0)):
            assert disk.lambda_n_prime(n, z) == pytest.approx(
                disk.lambda_n_prime_alt(n, z), rel=1e-10
            )

    def test_domain(self):
        with pytest.raises(DomainError):
            disk.lambda_n_prime(0, 1.0)
        with pytest.raises(DomainError):
            disk.lambda_n_prime(1, -1.0)


class TestLambdaSecondAtPrev:
    def test_mode_one_value(self):
        expected = (Z0_ORACLE - 1.0) / Z0_ORACLE  # ~0.3671
        assert disk.lambda_n_second_at_zprev(1, Z0_ORACLE) == pytest.approx(expected, rel=1e-12)
        assert 0.36 < expected < 0.38

    def test_against_second_difference(self):
        fd2 = central_diff(lambda z: disk.lambda_n(1, z), Z0_ORACLE, order=2)
        assert disk.lambda_n_second_at_zprev(1, Z0_ORACLE) == pytest.approx(fd2, abs=1e-4)

    def test_computes_crossing_when_missing(self):
        implicit = disk.lambda_n_second_at_zprev(1)
        assert implicit == pytest.approx((Z0_ORACLE - 1.0) / Z0_ORACLE, rel=1e-9)

    def test_large_mode_asymptotic_decay(self):
        from magsteklov import models

        alpha = models.compute_alpha()
        value = disk.lambda_n_second_at_zprev(10_000)
        assert value == pytest.approx(alpha * 10_000**-0.5, rel=0.05)


# ----------------------------------------------------------------- envelope


class TestEnvelope:
    def test_at_origin(self):
        point = disk.envelope([0.0])[0]
        assert point.active_mode == 0
        assert point.lambda_dn == 0.0

    def test_small_field_is_mode_zero(self):
        point = disk.envelope([1.0])[0]
        assert point.active_mode == 0
        assert point.lambda_dn == pytest.approx(disk.lambda_n(0, 1.0), rel=1e-14)

    def test_mode_transition_at_first_crossing(self):
        below, above = disk.envelope([Z0_ORACLE - 1e-6, Z0_ORACLE + 1e-6])
        assert below.active_mode == 0
        assert above.active_mode == 1

    def test_large_field_matches_asymptote(self):
        from magsteklov import models

        alpha = models.compute_alpha()
        point = disk.envelope([1e4])[0]
        expected = alpha * 100.0 - (alpha * alpha + 2.0) / 6.0
        assert point.lambda_dn == pytest.approx(expected, abs=0.05)

    def test_envelope_is_min_over_window(self):
        for b in (0.5, 3.7, 12.0, 47.3):
            point = disk.envelope([b])[0]
            window = range(0, int(b) + 3)
            best = min(disk.lambda_n(m, b) for m in window)
            assert point.lambda_dn == pytest.approx(best, rel=1e-12)

    def test_grid_order_preserved_and_monotone(self):
        grid = list(np.linspace(0.5, 30.0, 200))
        points = disk.envelope(grid)
        assert [p.b for p in points] == grid
        values = [p.lambda_dn for p in points]
        assert all(values[i] < values[i + 1] for i in range(len(values) - 1))

    def test_rejects_descending_grid(self):
        with pytest.raises(DomainError):
            disk.envelope([2.0, 1.0])

    def test_rejects_negative_field(self):
        with pytest.raises(DomainError):
            disk.envelope([-1.0])

    @given(st.floats(min_value=0.05, max_value=500.0))
    @settings(max_examples=40, deadline=None)
    def test_active_mode_is_local_minimum(self, b):
        mode = disk.active_mode(b)
        lam = disk.lambda_n(mode, b)
        slack = 1e-11 * max(1.0, abs(lam))
        assert lam <= disk.lambda_n(mode + 1, b) + slack
        if mode > 0:
            assert lam <= disk.lambda_n(mode - 1, b) + slack


class TestCurvePoints:
    def test_branch_samples(self):
        points = disk.curve_points(2, [0.0, 1.0, 3.5])
        assert [p.b for p in points] == [0.0, 1.0, 3.5]
        assert all(p.n == 2 for p in points)
        assert points[0].lam == 2.0
        assert points[2].lam == pytest.approx(disk.lambda_n(2, 3.5), rel=1e-15)


# ------------------------------------------------- invariant suite delegates


@pytest.mark.parametrize(
    "check",
    [
        verify.check_branch_inequality,
        verify.check_branch_positivity,
        verify.check_lambda_prime_vs_fd,
        verify.check_lambda_prime_two_forms,
        verify.check_mode_switch,
    ],
    ids=lambda fn: fn.__name__,
)
def test_invariant_suite(check):
    result = check(DEFAULT_TOL)
    assert result.passed, result.detail
