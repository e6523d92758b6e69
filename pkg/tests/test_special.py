import math
from fractions import Fraction

import pytest
import scipy.special
from hypothesis import given
from hypothesis import strategies as st

from shelflife.special import harmonic_diff, lambert_w0, trigamma_diff


def harmonic_oracle(k, n):
    """Exact-rational reference: sum of 1/j for j in [k, n)."""
    return float(sum(Fraction(1, j) for j in range(k, n)))


def trigamma_oracle(k, s):
    """Exact-rational reference: -sum of 1/j^2 for j in (k, s]."""
    return float(-sum(Fraction(1, j * j) for j in range(k + 1, s + 1)))


class TestHarmonicDiff:
    def test_empty_sum(self):
        assert harmonic_diff(5, 5) == 0.0

    def test_single_term(self):
        assert harmonic_diff(1, 2) == 1.0

    def test_exact_rational(self):
        # 1/3 + ... + 1/9 = 3349/2520
        assert harmonic_diff(3, 10) == pytest.approx(harmonic_oracle(3, 10), abs=1e-14)
        assert harmonic_oracle(3, 10) == pytest.approx(3349 / 2520, abs=0)

    def test_against_scipy_digamma(self):
        for k, n in [(1, 2), (3, 10), (17, 400), (250, 251), (1, 5000)]:
            expected = float(scipy.special.digamma(n) - scipy.special.digamma(k))
            assert harmonic_diff(k, n) == pytest.approx(expected, abs=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            harmonic_diff(5, 3)
        with pytest.raises(ValueError):
            harmonic_diff(0, 3)

    @given(st.integers(1, 400), st.integers(0, 60), st.integers(0, 60))
    def test_telescoping(self, k, d1, d2):
        m = k + d1
        n = m + d2
        lhs = harmonic_diff(k, n)
        rhs = harmonic_diff(k, m) + harmonic_diff(m, n)
        assert abs(lhs - rhs) <= 1e-12


class TestTrigammaDiff:
    def test_empty_sum(self):
        assert trigamma_diff(4, 4) == 0.0

    def test_single_term(self):
        assert trigamma_diff(1, 2) == -0.25

    def test_exact_rational(self):
        # -(1/9 + 1/16 + 1/25) = -769/3600
        assert trigamma_diff(2, 5) == pytest.approx(trigamma_oracle(2, 5), abs=1e-15)
        assert trigamma_oracle(2, 5) == pytest.approx(-769 / 3600, abs=0)

    def test_against_scipy_polygamma(self):
        for k, s in [(1, 2), (2, 5), (7, 300), (99, 100)]:
            expected = float(
                scipy.special.polygamma(1, s + 1) - scipy.special.polygamma(1, k + 1)
            )
            assert trigamma_diff(k, s) == pytest.approx(expected, abs=1e-10)

    def test_never_positive(self):
        assert all(trigamma_diff(k, k + 5) <= 0 for k in range(1, 50))

    @given(st.integers(1, 200), st.integers(0, 100))
    def test_monotone_nonincreasing_in_s(self, k, d):
        s = k + d
        assert trigamma_diff(k, s + 1) <= trigamma_diff(k, s)

    def test_domain(self):
        with pytest.raises(ValueError):
            trigamma_diff(5, 4)
        with pytest.raises(ValueError):
            trigamma_diff(0, 4)


class TestLambertW0:
    def test_fixed_points(self):
        assert lambert_w0(0.0) == 0.0
        assert lambert_w0(math.e) == pytest.approx(1.0, abs=1e-14)

    def test_branch_point(self):
        assert lambert_w0(-math.exp(-1.0)) == pytest.approx(-1.0, abs=1e-7)

    def test_domain(self):
        with pytest.raises(ValueError):
            lambert_w0(-math.exp(-1.0) - 1e-12)
        with pytest.raises(ValueError):
            lambert_w0(float("nan"))
        with pytest.raises(ValueError):
            lambert_w0(float("inf"))

    def test_against_scipy(self):
        for z in [-0.36, -0.3346952402326379, -0.1, 0.5, 2.0, 100.0, 1e6]:
            expected = float(scipy.special.lambertw(z).real)
            assert lambert_w0(z) == pytest.approx(expected, abs=1e-12, rel=1e-12)

    def test_threshold_constant(self):
        # -(2/3) W0(-(3/2) e^{-3/2}) is the upper threshold fraction
        b = -2.0 / 3.0 * lambert_w0(-1.5 * math.exp(-1.5))
        assert b == pytest.approx(0.417188, abs=1e-6)

    @given(st.floats(min_value=-math.exp(-1.0), max_value=1e8,
                     allow_nan=False, allow_infinity=False))
    def test_residual(self, z):
        w = lambert_w0(z)
        assert w >= -1.0 - 1e-12
        assert abs(w * math.exp(w) - z) <= 1e-14 * max(1.0, abs(z))
