"""Optimal stopping for the best-or-second-best duration ("shelf life") problem.

Select a relatively best or second-best item from a random sequence so that it
stays in the top two as long as possible.  The package provides the exact
finite-horizon solver (optimal two-threshold policies), a simulator with an
exhaustive small-case oracle, the infinite-horizon constants, and a CLI.
"""

from .asymptotic import (
    AsymptoticSolution,
    asymptotic_solution,
    asymptotic_value,
    limit_value_function,
    mean_operator_limit,
    phi_limit,
    solve_a,
    solve_b,
)
from .simulate import (
    McEstimate,
    TrialOutcome,
    exhaustive_policy_value,
    generate_rank_sequence,
    monte_carlo,
    permutation_to_ranks,
    realized_outcome,
)
from .solver import (
    PolicyThresholds,
    SolveResult,
    closed_form_value,
    duration_pmf,
    mean_operator,
    mean_operator_direct,
    payoff,
    payoff_from_pmf,
    policy_value,
    solve,
    transition_prob,
)
from .special import harmonic_diff, lambert_w0, trigamma_diff

__version__ = "0.1.0"
