"""Exact finite-horizon machinery for the best-or-second-best duration problem.

Items arrive in random order; the relative rank Y_k of the k-th item is
independent and uniform on {1..k}.  An item is a *candidate* while it is
relatively best or second best.  Selecting a candidate at time k earns the
normalized duration (T - k)/n, where T is the first time the selection drops
out of the top two (n+1 if it never does).  This module provides the duration
distributions, the stop payoff, the embedded-chain transition law, the
backward-induction solver and the two-threshold closed forms.

State (k, r) means: item k is relatively r-th best among the first k, with
r in {1, 2}.  A threshold pair (k1, k2) stops at (k, 1) iff k > k1 and at
(k, 2) iff k > k2.
"""

import math
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np

from .special import harmonic_diff, trigamma_diff


class PolicyThresholds(NamedTuple):
    """Stop on a relatively best item at k iff k > k1; on a second-best iff k > k2."""

    k1: int
    k2: int


class SolveResult(NamedTuple):
    """Output of :func:`solve`.

    state_values[r][k] is w(k, r), the optimal value at state (k, r); row 0 is
    unused and state (1, 2) does not exist (NaN).  continuation[k] is the
    value w~(k) of arriving at time k with nothing held; continuation[n+1] = 0.
    """

    thresholds: PolicyThresholds
    value: float
    state_values: np.ndarray
    continuation: np.ndarray


def _check_horizon(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise ValueError(f"horizon must be an integer, got {n!r}")
    if n < 2:
        raise ValueError(f"horizon must be >= 2, got {n}")


def _check_time(k, n, name="k"):
    if not 1 <= k <= n:
        raise ValueError(f"{name} must be in 1..{n}, got {k}")


@lru_cache(maxsize=128)
def _suffix_harmonic(n: int) -> np.ndarray:
    """H[k] = sum_{j=k}^{n-1} 1/j for k = 0..n (H[n] = 0, H[0] unused)."""
    H = np.zeros(n + 1)
    if n > 1:
        inv = 1.0 / np.arange(1, n, dtype=np.float64)
        H[1:n] = np.cumsum(inv[::-1])[::-1]
    return H


@lru_cache(maxsize=128)
def _payoff_tables(n: int):
    """(phi1, phi2, list(phi1), list(phi2)) with phi_r[k] = payoff(k, r, n)."""
    H = _suffix_harmonic(n)
    k = np.arange(0, n + 1, dtype=np.float64)
    phi1 = (k / n**2) * (1.0 + k - n + 2.0 * n * H)
    phi2 = k * (n - k + 1.0) / n**2
    return phi1, phi2, phi1.tolist(), phi2.tolist()


def duration_pmf(i: int, r: int, n: int) -> dict:
    """Distribution of the candidacy end time for a rank-r item held from time i.

    Keys i+1..n map to the probability that the item leaves the top two
    exactly then; key n+1 carries the mass of surviving through the horizon.
    A relatively best item (r=1) cannot leave at i+1 -- it must first be
    overtaken by a new best and only the next candidate after that ends its
    candidacy -- so the i+1 entry is exactly 0 for r=1.
    """
    _check_horizon(n)
    _check_time(i, n, "i")
    if r not in (1, 2):
        raise ValueError(f"rank must be 1 or 2, got {r}")
    if r > i:
        raise ValueError(f"rank {r} impossible at time {i}")
    pmf = {}
    if r == 2:
        for k in range(i + 1, n + 1):
            pmf[k] = 2.0 * (i - 1) * i / ((k - 2) * (k - 1) * k)
        pmf[n + 1] = i * (i - 1) / (n * (n - 1))
    else:
        for k in range(i + 1, n + 1):
            if k == i + 1:
                pmf[k] = 0.0
            else:
                pmf[k] = 2.0 * i * (k - i - 1) / ((k - 2) * (k - 1) * k)
        pmf[n + 1] = (2.0 * n * i - i * i - i) / (n * (n - 1))
    return pmf


def payoff(k: int, r: int, n: int) -> float:
    """Expected normalized duration E[(T - k)/n] of stopping at state (k, r).

    phi(k, 1) = (k/n^2)(1 + k - n + 2n(psi(n) - psi(k))),
    phi(k, 2) = k(n - k + 1)/n^2, and 0 for any rank beyond the candidate set.
    """
    _check_horizon(n)
    _check_time(k, n)
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    if r > 2:
        return 0.0
    phi1, phi2, _, _ = _payoff_tables(n)
    return float(phi1[k] if r == 1 else phi2[k])


def payoff_from_pmf(k: int, r: int, n: int) -> float:
    """Oracle for :func:`payoff`: the expectation summed over duration_pmf."""
    pmf = duration_pmf(k, r, n)
    return math.fsum(p * (t - k) for t, p in pmf.items()) / n


def transition_prob(k: int, s: Optional[int], n: int) -> float:
    """Embedded-chain step probability from a candidate at k.

    For k < s <= n, p(k, s) = k(k-1)/(s(s-1)(s-2)) is the probability that the
    next candidate appears at time s *with a given relative rank* (best and
    second-best each carry this mass).  ``s=None`` queries the absorption
    mass: no further candidate by n, which telescopes to k(k-1)/(n(n-1)).
    Rows normalize as 2*sum_s p(k, s) + p(k, None) = 1.
    """
    _check_horizon(n)
    if not 2 <= k <= n:
        raise ValueError(f"k must be in 2..{n}, got {k}")
    if s is None:
        return k * (k - 1) / (n * (n - 1))
    if not k < s <= n:
        raise ValueError(f"s must be in {k + 1}..{n} or None, got {s}")
    return k * (k - 1) / (s * (s - 1) * (s - 2))


def mean_operator(k: int, n: int) -> float:
    """Expected payoff of passing at k and stopping at the next candidate epoch.

    Closed form 2[(k/n)^2 - k/n + (k/n)(psi(n) - psi(k))]; rank-independent
    because the transition law does not depend on the current rank.  Valid
    from k = 1 (the direct-sum oracle needs k >= 2).
    """
    _check_horizon(n)
    _check_time(k, n)
    H = _suffix_harmonic(n)
    x = k / n
    return 2.0 * (x * x - x + x * float(H[k]))


def mean_operator_direct(k: int, n: int) -> float:
    """Oracle for :func:`mean_operator`: direct sum of p(k, j)(phi(j,1) + phi(j,2))."""
    _check_horizon(n)
    if not 2 <= k <= n:
        raise ValueError(f"k must be in 2..{n}, got {k}")
    _, _, p1, p2 = _payoff_tables(n)
    kk = float(k * (k - 1))
    return math.fsum(
        kk / (j * (j - 1) * (j - 2)) * (p1[j] + p2[j]) for j in range(k + 1, n + 1)
    )


def solve(n: int) -> SolveResult:
    """Optimal two-threshold policy and value by backward induction.

    w~(n+1) = 0; for k from n down to 2:
    w(k, r) = max(phi(k, r), w~(k+1)) and
    w~(k) = [w(k,1) + w(k,2) + (k-2) w~(k+1)]/k, except that when both ranks
    continue the average collapses to w~(k+1) exactly (taken verbatim so the
    below-threshold plateau is flat to the last bit).  At k = 1 only rank 1
    exists and w~(1) = w(1, 1) is the value.

    Thresholds are k_r = max{k : phi(k, r) < w~(k+1)} (0 when stopping is
    optimal everywhere).  A policy with k1 = 0 stops at the first item and
    never consults k2, so that degenerate case is reported canonically as
    (0, 0).  Ties between stopping and continuing are resolved by stopping.
    """
    _check_horizon(n)
    phi1, phi2, p1, p2 = _payoff_tables(n)
    w1 = [0.0] * (n + 1)
    w2 = [0.0] * (n + 1)
    cont = [0.0] * (n + 2)
    for k in range(n, 1, -1):
        c = cont[k + 1]
        f1 = p1[k]
        f2 = p2[k]
        stop1 = f1 >= c
        stop2 = f2 >= c
        v1 = f1 if stop1 else c
        v2 = f2 if stop2 else c
        w1[k] = v1
        w2[k] = v2
        cont[k] = (v1 + v2 + (k - 2) * c) / k if (stop1 or stop2) else c
    w1[1] = p1[1] if p1[1] >= cont[2] else cont[2]
    cont[1] = w1[1]

    k1 = 0
    for k in range(n, 0, -1):
        if p1[k] < cont[k + 1]:
            k1 = k
            break
    k2 = 0
    for k in range(n, 1, -1):
        if p2[k] < cont[k + 1]:
            k2 = k
            break
    if k1 == 0:
        k2 = 0

    state_values = np.full((3, n + 1), np.nan)
    state_values[1, 1:] = w1[1:]
    state_values[2, 2:] = w2[2:]
    return SolveResult(
        thresholds=PolicyThresholds(k1, k2),
        value=cont[1],
        state_values=state_values,
        continuation=np.array(cont),
    )


def _check_policy(policy, n):
    k1, k2 = policy
    if not 0 <= k1 <= k2 <= n:
        raise ValueError(f"need 0 <= k1 <= k2 <= {n}, got ({k1}, {k2})")
    return k1, k2


def policy_value(policy, n: int) -> float:
    """Exact value of an arbitrary threshold pair: the solve() recursion with
    the stop/continue decision forced by the policy instead of maximized."""
    _check_horizon(n)
    k1, k2 = _check_policy(policy, n)
    _, _, p1, p2 = _payoff_tables(n)
    c = 0.0
    for k in range(n, 1, -1):
        v1 = p1[k] if k > k1 else c
        v2 = p2[k] if k > k2 else c
        c = (v1 + v2 + (k - 2) * c) / k
    return p1[1] if k1 == 0 else c


def closed_form_value(k1: int, k2: int, n: int) -> float:
    """Digamma/trigamma closed form for the two-threshold value.

    v~(k1, k2) = sum_{j=k1+1}^{k2} [k1/(j(j-1))] phi(j, 1) + (k1/k2) Tphi(k2)
    reduced to special-function terms: with D = psi(k2) - psi(k1),
    E = psi(n) - psi(k2) and Q = sum_{m=k1}^{k2-1} 1/m^2,

        v~ = (k1/n^2)[(2-n)D + (k2-k1) + n(D^2 - Q) + 2nD E]
             + 2 k1 k2/n^2 - 2 k1/n + (2 k1/n) E.

    Equals the optimal value when (k1, k2) are the optimal thresholds (the
    continuation value is flat below k1 and the tail honors Tphi = w~ in the
    all-stop region).
    """
    _check_horizon(n)
    if not 1 <= k1 < k2 <= n:
        raise ValueError(f"need 1 <= k1 < k2 <= n, got ({k1}, {k2}) with n={n}")
    D = harmonic_diff(k1, k2)
    E = harmonic_diff(k2, n)
    Q = 1.0 / (k1 * k1) - 1.0 / (k2 * k2) - trigamma_diff(k1, k2)
    head = (k1 / n**2) * ((2.0 - n) * D + (k2 - k1) + n * (D * D - Q) + 2.0 * n * D * E)
    return head + 2.0 * k1 * k2 / n**2 - 2.0 * k1 / n + (2.0 * k1 / n) * E
