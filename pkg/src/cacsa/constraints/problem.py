"""
problem.py

Constraint problems over sizes: ⊥, or a conjunction of equalities and
inequalities kept in canonical form (sorted, duplicate-free, equalities
oriented). ⊤ is the empty conjunction.

Solutions: an equality holds when both sides have the same instance before
normalization; an inequality holds under ≤A.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Iterable, List, Set, Tuple

from cacsa.sizes.algebra import SizeExpr, SizeVar, show_size, size_leq
from cacsa.sizes.substitution import SizeSubst

Atom = Tuple[SizeExpr, SizeExpr]


def _orient(a: SizeExpr, b: SizeExpr) -> Atom:
    return (a, b) if a.sort_key() <= b.sort_key() else (b, a)


def _atom_key(atom: Atom):
    return (atom[0].sort_key(), atom[1].sort_key())


def canonical_atoms(atoms: Iterable[Atom]) -> Tuple[Atom, ...]:
    return tuple(sorted(set(atoms), key=_atom_key))


@dataclass(frozen=True)
class ConstraintProblem:
    equalities: Tuple[Atom, ...] = ()
    inequalities: Tuple[Atom, ...] = ()
    bottom: bool = False

    @classmethod
    def make(cls, equalities: Iterable[Atom] = (), inequalities: Iterable[Atom] = ()) -> "ConstraintProblem":
        return cls(canonical_atoms(_orient(a, b) for a, b in equalities), canonical_atoms(inequalities))

    @property
    def is_top(self) -> bool:
        return not self.bottom and not self.equalities and not self.inequalities

    def size_vars(self) -> Set[SizeVar]:
        out: Set[SizeVar] = set()
        for a, b in self.equalities + self.inequalities:
            out |= a.variables() | b.variables()
        return out

    def atom_count(self) -> int:
        return len(self.equalities) + len(self.inequalities)

    def equalities_only(self) -> "ConstraintProblem":
        return self if self.bottom else ConstraintProblem(self.equalities, ())

    def __str__(self) -> str:
        return show_problem(self)


TOP = ConstraintProblem()
BOTTOM = ConstraintProblem(bottom=True)


def eq(a: SizeExpr, b: SizeExpr) -> ConstraintProblem:
    return ConstraintProblem.make(equalities=[(a, b)])


def leq(a: SizeExpr, b: SizeExpr) -> ConstraintProblem:
    return ConstraintProblem.make(inequalities=[(a, b)])


def conj(*problems: ConstraintProblem) -> ConstraintProblem:
    """Canonical conjunction; ⊥ absorbs, ⊤ is neutral."""
    eqs: List[Atom] = []
    ineqs: List[Atom] = []
    for c in problems:
        if c.bottom:
            return BOTTOM
        eqs.extend(c.equalities)
        ineqs.extend(c.inequalities)
    return ConstraintProblem.make(eqs, ineqs)


def satisfies(phi: SizeSubst, c: ConstraintProblem) -> bool:
    if c.bottom:
        return False
    if any(phi.image_raw(a) != phi.image_raw(b) for a, b in c.equalities):
        return False
    return all(size_leq(phi.apply(a), phi.apply(b)) for a, b in c.inequalities)


# ---------------- Text form ----------------

def show_atoms(c: ConstraintProblem) -> List[str]:
    """One line per atom; `bottom` or `top` for the trivial problems."""
    if c.bottom:
        return ["bottom"]
    lines = [f"{show_size(a)} = {show_size(b)}" for a, b in c.equalities]
    lines += [f"{show_size(a)} <= {show_size(b)}" for a, b in c.inequalities]
    return lines or ["top"]


def show_problem(c: ConstraintProblem) -> str:
    return " /\\ ".join(show_atoms(c))
