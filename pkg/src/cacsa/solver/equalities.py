"""
equalities.py

Unification of size equalities. A state is ⊥ or a triple
pending | solved | inequalities; each step consumes the first pending
equation with one of five rules:

  (1) s a = s b          ->  a = b
  (2) a = a              ->  dropped
  (3) s^k α = s^l α, k≠l ->  ⊥            (occurs check)
  (4) ∞ = s^(k+1) a      ->  ⊥
  (5) α = a, α ∉ V(a)    ->  α = a moves to the solved part and α := a is
                             applied to every zone

Substitution is raw (no s∞ → ∞), matching the syntactic reading of
equality constraints.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from cacsa.constraints.problem import BOTTOM, Atom, ConstraintProblem, conj
from cacsa.sizes.algebra import SizeExpr, SizeVar, symbol_count
from cacsa.sizes.substitution import SizeSubst

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverState:
    pending: Tuple[Atom, ...] = ()
    solved: Tuple[Tuple[SizeVar, SizeExpr], ...] = ()
    inequalities: Tuple[Atom, ...] = ()
    bottom: bool = False

    @classmethod
    def start(cls, problem: ConstraintProblem) -> "SolverState":
        if problem.bottom:
            return BOT
        return cls(problem.equalities, (), problem.inequalities)

    @property
    def is_normal(self) -> bool:
        return self.bottom or not self.pending

    def solved_subst(self) -> SizeSubst:
        return SizeSubst.of(self.solved)

    def as_problem(self) -> ConstraintProblem:
        """The conjunction the state stands for."""
        if self.bottom:
            return BOTTOM
        solved = [(SizeExpr(v, 0), e) for v, e in self.solved]
        return conj(ConstraintProblem.make(list(self.pending) + solved, self.inequalities))


BOT = SolverState(bottom=True)


def _bind(state: SolverState, rest: Tuple[Atom, ...], var: SizeVar, value: SizeExpr) -> SolverState:
    sub = SizeSubst.of({var: value}).image_raw
    return SolverState(
        pending=tuple((sub(a), sub(b)) for a, b in rest),
        solved=tuple((v, sub(e)) for v, e in state.solved) + ((var, value),),
        inequalities=tuple((sub(a), sub(b)) for a, b in state.inequalities),
    )


def equality_step(state: SolverState) -> Optional[Tuple[int, SolverState]]:
    """One rewrite step as (rule number, new state); None on normal forms."""
    if state.is_normal:
        return None
    (a, b), rest = state.pending[0], state.pending[1:]
    if a == b:
        return 2, replace(state, pending=rest)
    if a.shift > 0 and b.shift > 0:
        peeled = (SizeExpr(a.base, a.shift - 1), SizeExpr(b.base, b.shift - 1))
        return 1, replace(state, pending=(peeled,) + rest)
    if a.base is not None and a.base == b.base:
        return 3, BOT
    for x, y in ((a, b), (b, a)):
        if x.base is None and x.shift == 0 and y.shift > 0:
            return 4, BOT
    for x, y in ((a, b), (b, a)):
        if x.base is not None and x.shift == 0:
            return 5, _bind(state, rest, x.base, y)
    raise AssertionError(f"no equality rule applies to {a} = {b}")


def measure(state: SolverState) -> Tuple[int, int]:
    """(pending equations, symbols in them); decreases lexicographically."""
    return (len(state.pending), sum(symbol_count(a) + symbol_count(b) for a, b in state.pending))


def simplify_equalities(state: SolverState) -> SolverState:
    """Normal form: ⊥, or an empty pending part with a solved-form substitution."""
    while True:
        step = equality_step(state)
        if step is None:
            return state
        rule, state = step
        logger.debug("equality rule (%d): %d pending", rule, len(state.pending))
