"""
generation.py

Compile subtyping goals between normal types into constraint problems.

    gen_sub(U, V)   solutions are exactly the φ with Uφ ≤s Vφ
    gen_eq(1, U, V) solutions are exactly the φ with Uφ = Vφ
    gen_eq(0, U, V) as mode 1, and additionally every annotation becomes ∞
"""
from __future__ import annotations

from cacsa.constraints.problem import BOTTOM, TOP, ConstraintProblem, conj, eq, leq
from cacsa.sizes.algebra import INFTY
from cacsa.terms.term import Abs, App, ConstPred, Prod, Sort, Symb, Term, Var, align_binders, spine


def gen_eq(mode: int, u: Term, v: Term) -> ConstraintProblem:
    if mode not in (0, 1):
        raise ValueError(f"mode must be 0 or 1, got {mode}")
    if isinstance(u, ConstPred) and isinstance(v, ConstPred):
        if u.name != v.name:
            return BOTTOM
        if mode == 1:
            return eq(u.ann, v.ann)
        return conj(eq(u.ann, v.ann), leq(INFTY, u.ann))
    if isinstance(u, App) and isinstance(v, App):
        return conj(gen_eq(mode, u.fun, v.fun), gen_eq(mode, u.arg, v.arg))
    if (isinstance(u, Prod) and isinstance(v, Prod)) or (isinstance(u, Abs) and isinstance(v, Abs)):
        _, ub, vb = align_binders(u, v)
        return conj(gen_eq(mode, u.binder_type, v.binder_type), gen_eq(mode, ub, vb))
    if isinstance(u, (Sort, Var, Symb)) and u == v:
        return TOP
    return BOTTOM


def gen_sub(u: Term, v: Term) -> ConstraintProblem:
    if isinstance(u, Prod) and isinstance(v, Prod):
        _, ub, vb = align_binders(u, v)
        return conj(gen_sub(v.binder_type, u.binder_type), gen_sub(ub, vb))
    u_head, u_args = spine(u)
    v_head, v_args = spine(v)
    if (isinstance(u_head, ConstPred) and isinstance(v_head, ConstPred)
            and u_head.name == v_head.name and len(u_args) == len(v_args)):
        parts = [leq(u_head.ann, v_head.ann)]
        parts += [gen_eq(0, a, b) for a, b in zip(u_args, v_args)]
        return conj(*parts)
    return gen_eq(1, u, v)
