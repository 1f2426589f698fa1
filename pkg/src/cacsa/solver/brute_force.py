"""
brute_force.py

Exhaustive solution enumeration for small problems, used as a test oracle
for `solve`. Candidate values are s^k ∞ and s^k #j for k up to the exponent
budget and j below the number of bases.
"""
from __future__ import annotations
import itertools
from typing import List, Optional

from cacsa.constraints.problem import ConstraintProblem, satisfies
from cacsa.sizes.algebra import SizeExpr
from cacsa.sizes.substitution import SizeSubst

BASE_PREFIX = "#"


class BudgetExceeded(ValueError):
    pass


def candidate_values(exp_budget: int, bases: int) -> List[SizeExpr]:
    values = [SizeExpr(None, k) for k in range(exp_budget + 1)]
    for j in range(1, bases + 1):
        values += [SizeExpr(f"{BASE_PREFIX}{j}", k) for k in range(exp_budget + 1)]
    return values


def brute_force_solve(
    problem: ConstraintProblem,
    var_budget: int,
    exp_budget: int,
    bases: Optional[int] = None,
) -> List[SizeSubst]:
    """Every candidate substitution on V(problem) that satisfies it."""
    if problem.bottom:
        return []
    variables = sorted(problem.size_vars())
    if len(variables) > var_budget:
        raise BudgetExceeded(f"{len(variables)} variables exceed the budget of {var_budget}")
    values = candidate_values(exp_budget, len(variables) if bases is None else bases)
    found: List[SizeSubst] = []
    for combo in itertools.product(values, repeat=len(variables)):
        phi = SizeSubst(tuple(zip(variables, combo)))
        if satisfies(phi, problem):
            found.append(phi)
    return found
