"""Lifting finite group actions on surfaces to their k-homology covers.

Vectors are lists of ints, matrices are lists of rows acting on column vectors, and a
modulus k = 0 means the integers. Library errors raise HomoliftError(kind, message).
"""

from ._homolift import (
    HomoliftError,
    core,
    enumerate_invariant_subgroups,
    howell_form,
    minimal_invariant_subgroup,
    quotient_invariants,
    riemann_hurwitz_genus,
    run_problem,
    run_scenario,
    scenario_names,
    solve_cyclic_lift,
)

__all__ = [
    "HomoliftError",
    "core",
    "enumerate_invariant_subgroups",
    "howell_form",
    "minimal_invariant_subgroup",
    "quotient_invariants",
    "riemann_hurwitz_genus",
    "run_problem",
    "run_scenario",
    "scenario_names",
    "solve_cyclic_lift",
]
