"""
solve.py

End-to-end constraint solving: equalities are unified first, the resulting
inequalities are reduced, variables on increasing cycles go to ∞, and the
linear remainder receives its least solution. The smallest solution (mgs)
is the solved equalities composed with that assignment.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

from cacsa.constraints.problem import ConstraintProblem, show_atoms
from cacsa.sizes.algebra import INFTY, FreshSupply, SizeExpr, SizeVar, show_size, size_var
from cacsa.sizes.substitution import SizeSubst, show_subst
from cacsa.solver.equalities import SolverState, simplify_equalities
from cacsa.solver.inequalities import ReducedForm, simplify_inequalities
from cacsa.solver.linear import minimal_linear_solution

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolveResult:
    problem: ConstraintProblem
    mgs: Optional[SizeSubst]
    equality_state: SolverState
    reduced: Optional[ReducedForm] = None

    @property
    def satisfiable(self) -> bool:
        return self.mgs is not None


def solve(problem: ConstraintProblem, supply: Optional[FreshSupply] = None) -> SolveResult:
    """Sat with the smallest solution over V(problem), or Unsat (mgs None)."""
    if supply is None:
        supply = FreshSupply(used=problem.size_vars())
    else:
        supply.reserve(problem.size_vars())

    state = simplify_equalities(SolverState.start(problem))
    if state.bottom:
        logger.debug("unsatisfiable: %s", problem)
        return SolveResult(problem, None, state)

    reduced = simplify_inequalities(state.inequalities)
    base: Dict[SizeVar, SizeExpr] = {v: INFTY for v in reduced.inf_vars}
    base.update(minimal_linear_solution(reduced.linear, supply).as_dict())
    assignment = SizeSubst.of(base)

    solved = dict(state.solved)
    mgs: Dict[SizeVar, SizeExpr] = {}
    for var in sorted(problem.size_vars()):
        if var in solved:
            mgs[var] = assignment.image_raw(solved[var])
        else:
            mgs[var] = base.get(var, size_var(var))
    result = SolveResult(problem, SizeSubst.of(mgs), state, reduced)
    logger.debug("mgs %s", result.mgs)
    return result


def dump_lines(result: SolveResult) -> List[str]:
    """Text sections for `--dump-constraints`."""
    lines = ["problem:"] + [f"  {x}" for x in show_atoms(result.problem)]
    state = result.equality_state
    if state.bottom:
        return lines + ["solved:", "  bottom"]
    lines.append("solved:")
    lines += [f"  {v} = {show_size(e)}" for v, e in state.solved] or ["  top"]
    if result.reduced is not None:
        lines.append("reduced inf:")
        lines += [f"  oo <= {v}" for v in result.reduced.inf_vars] or ["  top"]
        lines.append("reduced linear:")
        lines += [f"  {show_size(a)} <= {show_size(b)}" for a, b in result.reduced.linear] or ["  top"]
    lines.append(f"mgs: {show_subst(result.mgs)}")
    return lines
