"""
infer.py

Type inference and type checking with size annotations.

`infer` follows the syntax of the term, one case per constructor. At each
application the argument's type is compared with the function's domain by
generating a constraint problem; its smallest solution instantiates the
result type, whose remaining size variables are then renamed fresh. In
deferred mode the problems are accumulated in the session instead and the
result type is left uninstantiated.
"""
from __future__ import annotations
import logging
from typing import Optional, Tuple

from cacsa.constraints.generation import gen_sub
from cacsa.constraints.problem import ConstraintProblem, conj
from cacsa.inference.errors import ErrorKind, TypingError
from cacsa.inference.session import InferSession
from cacsa.rewriting.reduction import DEFAULT_FUEL
from cacsa.sizes.substitution import SizeSubst
from cacsa.terms.printer import show_term
from cacsa.terms.signature import Env, Signature
from cacsa.terms.term import (
    BOX, Abs, App, Binder, ConstPred, Prod, Sort, SortKind, Symb, Term, Var,
    erase_sizes, fresh_name, free_vars, size_vars, subst_size, subst_term,
)

logger = logging.getLogger(__name__)


def _open_binder(env: Env, t: Binder) -> Tuple[str, Term]:
    """Binder name and body, renamed when the name is already in scope."""
    if t.binder not in env.names:
        return t.binder, t.body
    name = fresh_name(t.binder, env.names | free_vars(t.body))
    return name, subst_term({t.binder: Var(name)}, t.body)


def _binder_sort(signature: Signature, env: Env, t: Binder, session: InferSession, depth: int) -> SortKind:
    sort = session.normalize(_infer(signature, env, t.binder_type, session, depth + 1))
    if not isinstance(sort, Sort):
        raise TypingError(
            ErrorKind.ILL_SORTED_BINDER,
            f"type of binder '{t.binder}' is {show_term(sort)}, not a sort")
    return sort.kind


def _infer(signature: Signature, env: Env, t: Term, session: InferSession, depth: int) -> Term:
    if isinstance(t, Sort):
        if t.kind is SortKind.BOX:
            raise TypingError(ErrorKind.BOX_HAS_NO_TYPE, "Kind has no type")
        result: Term = BOX
        rule = "ax"
    elif isinstance(t, ConstPred):
        sym = signature.lookup(t.name)
        if sym is None:
            raise TypingError(ErrorKind.INVALID_DECLARATION, f"undeclared symbol '{t.name}'")
        result, rule = sym.type, "size"
    elif isinstance(t, Symb):
        sym = signature.lookup(t.name)
        if sym is None:
            raise TypingError(ErrorKind.INVALID_DECLARATION, f"undeclared symbol '{t.name}'")
        result, rule = session.rename_fresh(sym.type), "symb"
    elif isinstance(t, Var):
        entry = env.lookup(t.name)
        if entry is None:
            raise TypingError(ErrorKind.UNBOUND_VARIABLE, f"unbound variable '{t.name}'")
        result, rule = entry.type, "var"
    elif isinstance(t, Prod):
        kind = _binder_sort(signature, env, t, session, depth)
        name, body = _open_binder(env, t)
        body_sort = session.normalize(_infer(signature, env.extend(name, t.binder_type, kind), body, session, depth + 1))
        if not isinstance(body_sort, Sort):
            raise TypingError(ErrorKind.SORT_MISMATCH, f"product body has type {show_term(body_sort)}, not a sort")
        result, rule = body_sort, "prod"
    elif isinstance(t, Abs):
        kind = _binder_sort(signature, env, t, session, depth)
        name, body = _open_binder(env, t)
        body_type = _infer(signature, env.extend(name, t.binder_type, kind), body, session, depth + 1)
        if session.normalize(body_type) == BOX:
            raise TypingError(ErrorKind.SORT_MISMATCH, "abstraction body has type Kind")
        result, rule = Prod(name, t.binder_type, body_type), "abs"
    elif isinstance(t, App):
        result, rule = _infer_app(signature, env, t, session, depth), "app"
    else:
        raise TypeError(f"not a term: {t!r}")
    session.note(depth, f"({rule}) {show_term(t)} : {show_term(result)}")
    return result


def _infer_app(signature: Signature, env: Env, t: App, session: InferSession, depth: int) -> Term:
    fun_type = _infer(signature, env, t.fun, session, depth + 1)
    session.reserve(size_vars(fun_type))
    arg_type = _infer(signature, env, t.arg, session, depth + 1)
    product = session.normalize(fun_type)
    if not isinstance(product, Prod):
        raise TypingError(
            ErrorKind.NOT_A_PRODUCT,
            f"{show_term(t.fun)} has type {show_term(product)}, which is not a product")
    problem = gen_sub(session.normalize(arg_type), product.binder_type)

    if session.deferred:
        if session.collect(problem).bottom:
            raise TypingError(
                ErrorKind.UNSAT_CONSTRAINTS,
                f"argument {show_term(t.arg)} does not fit {show_term(product.binder_type)}",
                residue=problem)
        return subst_term({product.binder: t.arg}, product.body)

    result = session.solve(problem)
    if not result.satisfiable:
        raise TypingError(
            ErrorKind.UNSAT_CONSTRAINTS,
            f"argument {show_term(t.arg)} : {show_term(arg_type)} does not fit {show_term(product.binder_type)}",
            residue=problem)
    body = session.rename_fresh(subst_size(result.mgs, product.body))
    return subst_term({product.binder: t.arg}, body)


# ---------------- Entry points ----------------

def infer(signature: Signature, env: Env, t: Term, session: InferSession) -> Term:
    """The inferred type of t; its size variables are fresh for the session."""
    session.reserve(env.size_vars())
    return _infer(signature, env, t, session, 0)


def infer_deferred(
    signature: Signature, env: Env, t: Term, session: Optional[InferSession] = None,
) -> Tuple[Term, ConstraintProblem]:
    """(type, collected constraints); solutions of the problem instantiate both."""
    if session is None:
        session = InferSession(signature, deferred=True)
    session.deferred = True
    ty = infer(signature, env, t, session)
    return ty, session.collected


def check_sorted(signature: Signature, env: Env, ty: Term, session: InferSession) -> SortKind:
    """Sort of the ∞-erasure of ty; raises SortMismatch when there is none."""
    sort = session.normalize(infer(signature, env, erase_sizes(ty), session))
    if not isinstance(sort, Sort):
        raise TypingError(ErrorKind.SORT_MISMATCH, f"{show_term(ty)} is not a type (its type is {show_term(sort)})")
    return sort.kind


def check(
    signature: Signature,
    env: Env,
    t: Term,
    ty: Term,
    session: Optional[InferSession] = None,
    fuel: int = DEFAULT_FUEL,
) -> SizeSubst:
    """ψ such that t : tyψ, smallest among all such substitutions."""
    if session is None:
        session = InferSession(signature, fuel=fuel)
    session.reserve(size_vars(ty))
    check_sorted(signature, env, ty, session)
    inferred = infer(signature, env, t, session)
    problem = gen_sub(session.normalize(inferred), session.normalize(ty))
    result = session.solve(problem)
    if not result.satisfiable:
        raise TypingError(
            ErrorKind.UNSAT_CONSTRAINTS,
            f"{show_term(t)} : {show_term(inferred)} is not a subtype of {show_term(ty)}",
            residue=problem)
    logger.debug("check %s : %s with %s", show_term(t), show_term(ty), result.mgs)
    return result.mgs


def infer_type(signature: Signature, env: Env, t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    return infer(signature, env, t, InferSession(signature, fuel=fuel))


# ---------------- Annotated environments ----------------
# `infer` renames every size variable of an application's result, which is
# only sound when the environment carries none. With annotated assumptions
# the constraints of the whole derivation are solved at once instead.

def infer_annotated(
    signature: Signature, env: Env, t: Term, session: Optional[InferSession] = None,
) -> Tuple[Term, SizeSubst]:
    """(type instance, mgs); the mgs also instantiates the environment's sizes."""
    if session is None:
        session = InferSession(signature)
    ty, collected = infer_deferred(signature, env, t, session)
    result = session.solve(collected)
    if not result.satisfiable:
        raise TypingError(ErrorKind.UNSAT_CONSTRAINTS, f"{show_term(t)} has no size instance", residue=collected)
    return subst_size(result.mgs, ty), result.mgs


def check_annotated(
    signature: Signature,
    env: Env,
    t: Term,
    ty: Term,
    session: Optional[InferSession] = None,
    fuel: int = DEFAULT_FUEL,
) -> SizeSubst:
    if session is None:
        session = InferSession(signature, fuel=fuel)
    session.reserve(size_vars(ty))
    check_sorted(signature, env, ty, InferSession(signature, used=session.used, fuel=session.reducer.fuel))
    inferred, collected = infer_deferred(signature, env, t, session)
    problem = conj(collected, gen_sub(session.normalize(inferred), session.normalize(ty)))
    result = session.solve(problem)
    if not result.satisfiable:
        raise TypingError(
            ErrorKind.UNSAT_CONSTRAINTS,
            f"{show_term(t)} : {show_term(inferred)} is not a subtype of {show_term(ty)}",
            residue=problem)
    return result.mgs
