"""
inequalities.py

Simplification of inequality conjunctions into reduced form. Rules, tried in
this order on the canonical atom list:

  (1) a ≤ s^k ∞                       dropped
  (3) ∞ ≤ s^l α                       α := ∞ applied to the other atoms; the
                                      atom itself becomes ∞ ≤ α
  (2) D with an increasing dependency  D replaced by ∞ ≤ α for α ∈ V(D)
      cycle

The normal form splits into variables forced to ∞ and a linear part whose
dependency graph has no increasing cycle.
"""
from __future__ import annotations
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from cacsa.constraints.problem import Atom, ConstraintProblem, canonical_atoms
from cacsa.sizes.algebra import INFTY, SizeVar, size_var, symbol_count
from cacsa.sizes.substitution import SizeSubst
from cacsa.solver.dependency_graph import DependencyGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReducedForm:
    inf_vars: Tuple[SizeVar, ...] = ()
    linear: Tuple[Atom, ...] = ()

    def as_problem(self) -> ConstraintProblem:
        return ConstraintProblem.make(
            inequalities=[(INFTY, size_var(v)) for v in self.inf_vars] + list(self.linear))


def _linear(atom: Atom) -> bool:
    return atom[0].base is not None and atom[1].base is not None


def _occurs(var: SizeVar, atoms: Iterable[Atom]) -> bool:
    return any(var in a.variables() or var in b.variables() for a, b in atoms)


def inequality_step(atoms: Tuple[Atom, ...]) -> Optional[Tuple[int, Tuple[Atom, ...]]]:
    """One rewrite step on canonical atoms as (rule number, new atoms)."""
    for i, (_, b) in enumerate(atoms):
        if b.base is None:
            return 1, atoms[:i] + atoms[i + 1:]

    for i, (a, b) in enumerate(atoms):
        if a.base is not None:
            continue
        others = atoms[:i] + atoms[i + 1:]
        pinned = (INFTY, size_var(b.base))
        if _occurs(b.base, others):
            to_infty = SizeSubst.of({b.base: INFTY}).apply
            moved = [(to_infty(x), to_infty(y)) for x, y in others]
            return 3, canonical_atoms(moved + [pinned])
        if (a, b) != pinned:
            return 3, canonical_atoms(list(others) + [pinned])

    cycle = DependencyGraph([x for x in atoms if _linear(x)]).find_increasing_cycle()
    if cycle is not None:
        dropped = set(cycle.constraints)
        kept = [x for x in atoms if x not in dropped]
        return 2, canonical_atoms(kept + [(INFTY, size_var(v)) for v in cycle.vertices])
    return None


def simplify_inequalities(inequalities: Iterable[Atom]) -> ReducedForm:
    atoms = canonical_atoms(inequalities)
    while True:
        step = inequality_step(atoms)
        if step is None:
            break
        rule, atoms = step
        logger.debug("inequality rule (%d): %d atoms", rule, len(atoms))
    inf_vars = tuple(sorted(b.base for a, b in atoms if a.base is None))
    return ReducedForm(inf_vars, tuple(x for x in atoms if _linear(x)))


# ---------------- Termination measure ----------------

def measure(atoms: Iterable[Atom]) -> Tuple[int, Counter]:
    """(symbol count, multiset of per-variable occurrence counts)."""
    atoms = list(atoms)
    symbols = sum(symbol_count(a) + symbol_count(b) for a, b in atoms)
    occurrences: Counter = Counter()
    for a, b in atoms:
        for x in (a, b):
            if x.base is not None:
                occurrences[x.base] += 1
    return symbols, Counter(occurrences.values())


def multiset_less(m: Counter, n: Counter) -> bool:
    """Multiset ordering on naturals: m < n."""
    if m == n:
        return False
    for x in m:
        if m[x] > n[x] and not any(y > x and n[y] > m[y] for y in n):
            return False
    return True


def measure_decreases(before: Tuple[int, Counter], after: Tuple[int, Counter]) -> bool:
    if after[0] != before[0]:
        return after[0] < before[0]
    return multiset_less(after[1], before[1])
