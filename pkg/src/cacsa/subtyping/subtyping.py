"""
subtyping.py

Subtyping decision. Transitivity and conversion are eliminated by comparing
normal forms with three structural rules: reflexivity up to renaming, size
on a fully applied constant predicate with closed arguments, and products
(contravariant domain, covariant codomain).
"""
from __future__ import annotations

from cacsa.rewriting.reduction import DEFAULT_FUEL, Reducer
from cacsa.sizes.algebra import size_leq
from cacsa.terms.signature import Signature
from cacsa.terms.term import ConstPred, Prod, Term, align_binders, alpha_eq, size_vars, spine


def subtype_nf(t: Term, u: Term) -> bool:
    """t ≤s u for t, u in normal form."""
    if alpha_eq(t, u):
        return True
    if isinstance(t, Prod) and isinstance(u, Prod):
        _, tb, ub = align_binders(t, u)
        return subtype_nf(u.binder_type, t.binder_type) and subtype_nf(tb, ub)
    t_head, t_args = spine(t)
    u_head, u_args = spine(u)
    if not (isinstance(t_head, ConstPred) and isinstance(u_head, ConstPred)):
        return False
    if t_head.name != u_head.name or len(t_args) != len(u_args):
        return False
    if not all(alpha_eq(a, b) for a, b in zip(t_args, u_args)):
        return False
    if any(size_vars(a) for a in t_args):
        return False
    return size_leq(t_head.ann, u_head.ann)


def subtype(signature: Signature, t: Term, u: Term, fuel: int = DEFAULT_FUEL) -> bool:
    """t ≤ u, decided as t↓ ≤s u↓."""
    reducer = Reducer(signature, fuel)
    return subtype_nf(reducer.normalize(t), reducer.normalize(u))
