"""
session.py

State of one inference run: the used size variables and their fresh supply,
the reducer (with its step budget), collected constraints for deferred
inference, solver results and optional derivation trace.
"""
from __future__ import annotations
import logging
from typing import Iterable, List, Optional, Set

from cacsa.constraints.problem import TOP, ConstraintProblem, conj
from cacsa.inference.errors import ErrorKind, TypingError
from cacsa.rewriting.reduction import DEFAULT_FUEL, FuelExhausted, Reducer
from cacsa.sizes.algebra import FreshSupply, SizeVar, size_var
from cacsa.sizes.substitution import SizeSubst
from cacsa.solver.solve import SolveResult, solve
from cacsa.terms.printer import show_term
from cacsa.terms.signature import Signature
from cacsa.terms.term import Term, size_vars, subst_size

logger = logging.getLogger(__name__)


class InferSession:
    def __init__(
        self,
        signature: Signature,
        used: Optional[Set[SizeVar]] = None,
        fuel: int = DEFAULT_FUEL,
        trace: bool = False,
        deferred: bool = False,
    ) -> None:
        self.signature = signature
        # The set is shared with the caller so several sessions can avoid each other's names.
        self.supply = FreshSupply(used=used if used is not None else set())
        self.reducer = Reducer(signature, fuel)
        self.trace = trace
        self.deferred = deferred
        self.trace_lines: List[str] = []
        self.solve_log: List[SolveResult] = []
        self.collected: ConstraintProblem = TOP

    @property
    def used(self) -> Set[SizeVar]:
        return self.supply.used

    def reserve(self, names: Iterable[SizeVar]) -> None:
        self.supply.reserve(names)

    def fresh(self) -> SizeVar:
        return self.supply.fresh()

    def normalize(self, t: Term) -> Term:
        try:
            return self.reducer.normalize(t)
        except FuelExhausted as exc:
            raise TypingError(ErrorKind.FUEL_EXHAUSTED, f"{exc} while normalizing {show_term(t)}") from exc

    def rename_fresh(self, t: Term) -> Term:
        """Rename every size variable of t to a fresh one."""
        names = sorted(size_vars(t))
        if not names:
            return t
        return subst_size(SizeSubst.of({v: size_var(self.fresh()) for v in names}), t)

    def solve(self, problem: ConstraintProblem) -> SolveResult:
        result = solve(problem, self.supply)
        self.solve_log.append(result)
        return result

    def collect(self, problem: ConstraintProblem) -> ConstraintProblem:
        self.collected = conj(self.collected, problem)
        return self.collected

    def note(self, depth: int, text: str) -> None:
        if self.trace:
            self.trace_lines.append("  " * depth + text)
