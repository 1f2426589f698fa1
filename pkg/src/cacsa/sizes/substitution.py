"""
substitution.py

Size substitutions, their pointwise ordering, and the "more general" preorder
used to state minimality of solver results.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

from cacsa.sizes.algebra import SizeExpr, SizeVar, normalize, show_size, size_leq, size_var


@dataclass(frozen=True)
class SizeSubst:
    """Finite map SizeVar → SizeExpr, identity outside its domain.

    Bindings are stored sorted so that equal maps compare and hash equal.
    Identity bindings are kept: a solver result lists every variable of
    its problem.
    """
    items: Tuple[Tuple[SizeVar, SizeExpr], ...] = ()

    @classmethod
    def of(cls, bindings: Mapping[SizeVar, SizeExpr] | Iterable[Tuple[SizeVar, SizeExpr]]) -> "SizeSubst":
        pairs = dict(bindings.items() if isinstance(bindings, Mapping) else bindings)
        return cls(tuple(sorted(pairs.items())))

    # ---------------- Lookup ----------------
    def as_dict(self) -> Dict[SizeVar, SizeExpr]:
        return dict(self.items)

    @property
    def domain(self) -> Set[SizeVar]:
        return {v for v, _ in self.items}

    def range_vars(self) -> Set[SizeVar]:
        out: Set[SizeVar] = set()
        for _, e in self.items:
            out |= e.variables()
        return out

    def get(self, var: SizeVar) -> SizeExpr:
        for v, e in self.items:
            if v == var:
                return e
        return size_var(var)

    # ---------------- Application ----------------
    def image_raw(self, a: SizeExpr) -> SizeExpr:
        """aφ without re-normalizing; s^k over an ∞ image keeps its successors."""
        if a.base is None:
            return a
        img = self.get(a.base)
        return SizeExpr(img.base, img.shift + a.shift)

    def apply(self, a: SizeExpr) -> SizeExpr:
        return normalize(self.image_raw(a))

    def then(self, other: "SizeSubst") -> "SizeSubst":
        """Composition φψ: apply self, then other (raw, like the solver needs)."""
        out = {v: other.image_raw(e) for v, e in self.items}
        for v, e in other.items:
            out.setdefault(v, e)
        return SizeSubst.of(out)

    def restrict(self, variables: Iterable[SizeVar]) -> "SizeSubst":
        keep = set(variables)
        return SizeSubst(tuple((v, e) for v, e in self.items if v in keep))

    def normalized(self) -> "SizeSubst":
        return SizeSubst(tuple((v, normalize(e)) for v, e in self.items))

    def __len__(self) -> int:
        return len(self.items)

    def __str__(self) -> str:
        return show_subst(self)


EMPTY_SUBST = SizeSubst()


def show_subst(phi: SizeSubst) -> str:
    inner = ", ".join(f"{v} := {show_size(e)}" for v, e in phi.items)
    return "{" + inner + "}"


def apply_size_subst(phi: SizeSubst, a: SizeExpr) -> SizeExpr:
    """aφ, re-normalized."""
    return phi.apply(a)


def subst_leq(phi: SizeSubst, psi: SizeSubst) -> bool:
    """φ ≤A ψ on the union of both domains."""
    return subst_leq_on(phi, psi, phi.domain | psi.domain)


def subst_leq_on(phi: SizeSubst, psi: SizeSubst, variables: Iterable[SizeVar]) -> bool:
    return all(size_leq(phi.get(v), psi.get(v)) for v in variables)


def more_general_witness(phi: SizeSubst, psi: SizeSubst) -> Optional[SizeSubst]:
    """Some φ' with φφ' ≤A ψ on dom(φ) ∪ dom(ψ), or None when none exists.

    Requirements are grouped by the base variable β of each image αφ = s^k β:
    every finite target αψ must share one base γ, and β ↦ s^m γ with m the
    least slack. Targets that are ∞ constrain nothing.
    """
    requirements: Dict[SizeVar, List[Tuple[int, SizeExpr]]] = {}
    for var in sorted(phi.domain | psi.domain):
        img = normalize(phi.get(var))
        target = normalize(psi.get(var))
        if img.is_infinite:
            if not target.is_infinite:
                return None
            continue
        requirements.setdefault(img.base, []).append((img.shift, target))

    witness: Dict[SizeVar, SizeExpr] = {}
    for base, reqs in requirements.items():
        finite = [(k, t) for k, t in reqs if not t.is_infinite]
        if not finite:
            continue
        bases = {t.base for _, t in finite}
        if len(bases) != 1:
            return None
        slack = min(t.shift - k for k, t in finite)
        if slack < 0:
            return None
        witness[base] = SizeExpr(bases.pop(), slack)
    return SizeSubst.of(witness)


def more_general(phi: SizeSubst, psi: SizeSubst) -> bool:
    """φ ⊑ ψ: some φ' satisfies φφ' ≤A ψ."""
    return more_general_witness(phi, psi) is not None
