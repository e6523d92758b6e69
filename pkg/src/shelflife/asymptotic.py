"""Infinite-horizon limits: threshold fractions a < b and the limit value.

As n grows, the optimal thresholds scale linearly (k1 ~ a*n, k2 ~ b*n) and the
value converges.  b solves the indifference equation Tphi(b) = phi(b, 2) in
closed form through the Lambert W function; a is the root of
v~(x, b) = phi(x, 1) on (0, b); the limit value is v~(a, b), constant below
the first threshold exactly as the finite-n continuation value is.
"""

import math
from typing import NamedTuple

from scipy.optimize import brentq

from .special import lambert_w0


class AsymptoticSolution(NamedTuple):
    a: float
    b: float
    value: float


def phi_limit(x: float, r: int) -> float:
    """Limit payoff at threshold fraction x: x^2 - 2x log x - x for rank 1,
    x(1 - x) for rank 2.  Both vanish at x = 1."""
    if not 0.0 < x <= 1.0:
        raise ValueError(f"x must be in (0, 1], got {x}")
    if r == 1:
        return x * x - 2.0 * x * math.log(x) - x
    if r == 2:
        return x * (1.0 - x)
    raise ValueError(f"rank must be 1 or 2, got {r}")


def mean_operator_limit(x: float) -> float:
    """Limit of the stop-at-next-candidate payoff: 2(x^2 - x - x log x)."""
    if not 0.0 < x <= 1.0:
        raise ValueError(f"x must be in (0, 1], got {x}")
    return 2.0 * (x * x - x - x * math.log(x))


def solve_b() -> float:
    """Upper threshold fraction: b = -(2/3) W0(-(3/2) e^{-3/2}) ~ 0.417188."""
    return -2.0 / 3.0 * lambert_w0(-1.5 * math.exp(-1.5))


def _antiderivative(t: float) -> float:
    # d/dt [t - log(t)^2 - log(t)] = 1 - 2 log(t)/t - 1/t = (t^2 - 2t log t - t)/t^2
    lt = math.log(t)
    return t - lt * lt - lt


def limit_value_function(x: float, b: float) -> float:
    """v~(x, b) = integral_x^b (x/t^2) phi(t, 1) dt + (x/b) Tphi_limit(b),

    evaluated through the exact antiderivative x*(t - log^2 t - log t)."""
    if x <= 0.0 or x > b:
        raise ValueError(f"x must be in (0, b], got x={x}, b={b}")
    return x * (_antiderivative(b) - _antiderivative(x)) + (x / b) * mean_operator_limit(b)


def solve_a(b: float) -> float:
    """Lower threshold fraction: the root of v~(x, b) = phi(x, 1) on (0, b)."""

    def gap(x):
        return limit_value_function(x, b) - phi_limit(x, 1)

    try:
        return float(brentq(gap, 1e-4, b - 1e-4, xtol=1e-12))
    except ValueError as exc:
        raise ArithmeticError(f"root bracketing for a failed: {exc}") from None


def asymptotic_value() -> float:
    """Limit normalized value ~ 0.403827."""
    b = solve_b()
    return limit_value_function(solve_a(b), b)


def asymptotic_solution() -> AsymptoticSolution:
    """All three limit constants (a, b, value) in one call."""
    b = solve_b()
    a = solve_a(b)
    return AsymptoticSolution(a=a, b=b, value=limit_value_function(a, b))
