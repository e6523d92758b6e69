import math

import pytest
from scipy.integrate import quad
from scipy.optimize import brentq

from shelflife.asymptotic import (
    asymptotic_solution,
    asymptotic_value,
    limit_value_function,
    mean_operator_limit,
    phi_limit,
    solve_a,
    solve_b,
)
from shelflife.solver import mean_operator, payoff, solve

A_REF = 0.120381
B_REF = 0.417188
V_REF = 0.403827


class TestPhiLimit:
    def test_vanishes_at_one(self):
        assert phi_limit(1.0, 1) == 0.0
        assert phi_limit(1.0, 2) == 0.0

    def test_half(self):
        assert phi_limit(0.5, 1) == pytest.approx(0.25 + math.log(2) - 0.5, abs=1e-15)
        assert phi_limit(0.5, 2) == 0.25

    def test_finite_horizon_consistency(self):
        n = 10**6
        assert payoff(n // 2, 1, n) == pytest.approx(phi_limit(0.5, 1), abs=1e-5)

    def test_domain(self):
        with pytest.raises(ValueError):
            phi_limit(0.0, 1)
        with pytest.raises(ValueError):
            phi_limit(1.5, 1)
        with pytest.raises(ValueError):
            phi_limit(0.5, 3)


class TestMeanOperatorLimit:
    def test_vanishes_at_one(self):
        assert mean_operator_limit(1.0) == 0.0

    def test_half(self):
        expected = 2 * (0.25 - 0.5 + 0.5 * math.log(2))
        assert mean_operator_limit(0.5) == pytest.approx(expected, abs=1e-15)
        assert mean_operator_limit(0.5) == pytest.approx(0.1931471805599453, abs=1e-15)

    def test_finite_horizon_consistency(self):
        n = 10**6
        assert mean_operator(n // 2, n) == pytest.approx(
            mean_operator_limit(0.5), abs=1e-5
        )

    def test_domain(self):
        with pytest.raises(ValueError):
            mean_operator_limit(-0.1)


class TestSolveB:
    def test_reference_value(self):
        assert solve_b() == pytest.approx(B_REF, abs=1e-6)

    def test_indifference_equation(self):
        b = solve_b()
        assert abs(mean_operator_limit(b) - phi_limit(b, 2)) < 1e-12

    def test_agrees_with_direct_root(self):
        # independent route: solve the indifference equation without Lambert W
        root = brentq(
            lambda x: mean_operator_limit(x) - phi_limit(x, 2), 0.2, 0.8, xtol=1e-14
        )
        assert solve_b() == pytest.approx(root, abs=1e-10)


class TestLimitValueFunction:
    def test_empty_integral(self):
        b = solve_b()
        assert limit_value_function(b, b) == mean_operator_limit(b)

    def test_against_quadrature(self):
        b = solve_b()
        for x in (0.05, 0.12, 0.2, 0.3, 0.4):
            integral, err = quad(
                lambda t: (x / t**2) * phi_limit(t, 1), x, b,
                epsabs=1e-13, epsrel=1e-13,
            )
            expected = integral + (x / b) * mean_operator_limit(b)
            assert limit_value_function(x, b) == pytest.approx(expected, abs=1e-10)

    def test_reference_value_at_thresholds(self):
        assert limit_value_function(A_REF, B_REF) == pytest.approx(V_REF, abs=1e-5)

    def test_domain(self):
        b = solve_b()
        with pytest.raises(ValueError):
            limit_value_function(0.0, b)
        with pytest.raises(ValueError):
            limit_value_function(b + 0.01, b)


class TestSolveA:
    def test_reference_value(self):
        assert solve_a(solve_b()) == pytest.approx(A_REF, abs=1e-5)

    def test_root_residual(self):
        b = solve_b()
        a = solve_a(b)
        assert abs(limit_value_function(a, b) - phi_limit(a, 1)) < 1e-9

    def test_single_crossing(self):
        b = solve_b()
        a = solve_a(b)
        for x in (0.02, 0.05, 0.1, a - 1e-3):
            assert limit_value_function(x, b) >= phi_limit(x, 1)
        for x in (a + 1e-3, 0.2, 0.3, 0.4):
            assert limit_value_function(x, b) <= phi_limit(x, 1)

    def test_bracketing_failure_is_numeric_error(self):
        with pytest.raises(ArithmeticError):
            solve_a(1.2e-4)  # bracket [1e-4, b - 1e-4] collapses


class TestAsymptoticValue:
    def test_reference_value(self):
        assert asymptotic_value() == pytest.approx(V_REF, abs=1e-5)

    def test_consistent_with_solution_tuple(self):
        sol = asymptotic_solution()
        assert 0.0 < sol.a < sol.b < 1.0
        assert 0.0 < sol.value < 1.0
        assert asymptotic_value() == sol.value
        assert sol.value == limit_value_function(sol.a, sol.b)

    def test_finite_horizon_gap(self):
        assert abs(solve(10_000).value - asymptotic_value()) <= 2e-4


class TestConvergenceLadder:
    def test_threshold_and_value_gaps_shrink(self):
        sol = asymptotic_solution()
        gaps_a, gaps_b, gaps_v = [], [], []
        for n in (100, 1_000, 10_000, 100_000):
            res = solve(n)
            gaps_a.append(abs(res.thresholds.k1 / n - sol.a))
            gaps_b.append(abs(res.thresholds.k2 / n - sol.b))
            gaps_v.append(abs(res.value - sol.value))
        for gaps in (gaps_a, gaps_b, gaps_v):
            # non-strict: k1/n happens to tie exactly between n=100 and n=1000
            assert all(b <= a + 1e-15 for a, b in zip(gaps, gaps[1:])), gaps
