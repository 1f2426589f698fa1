"""
validation.py

Well-formedness of a loaded signature: symbol types must be sorted (their
sort is recorded on the symbol), constant predicate symbols must carry
∞-kinds, and rewrite rules must be algebraic, closed over their left-hand
side, within the head's arity and free of size variables.
A declaration whose sorting runs out of reduction steps raises a
FuelExhausted typing error instead of yielding a diagnostic.
"""
from __future__ import annotations
import logging
from typing import List, Set

from cacsa.inference.errors import ErrorKind, TypingError
from cacsa.inference.infer import check_sorted
from cacsa.inference.session import InferSession
from cacsa.rewriting.reduction import DEFAULT_FUEL
from cacsa.terms.printer import show_term
from cacsa.terms.signature import Env, RewriteRule, Signature
from cacsa.terms.term import (
    ConstPred, Sort, SortKind, Symb, Term, TermClass, Var,
    classify, free_vars, is_infinity_term, size_vars, spine,
)

logger = logging.getLogger(__name__)


def validate_signature(signature: Signature, fuel: int = DEFAULT_FUEL) -> List[TypingError]:
    errors: List[TypingError] = []
    for sym in list(signature.symbols.values()):
        session = InferSession(signature, used=set(size_vars(sym.type)), fuel=fuel)
        try:
            sort = check_sorted(signature, Env(), sym.type, session)
        except TypingError as exc:
            if exc.kind is ErrorKind.FUEL_EXHAUSTED:
                raise TypingError(exc.kind, f"type of '{sym.name}': {exc.message}", sym.span) from exc
            errors.append(TypingError(
                ErrorKind.INVALID_DECLARATION, f"type of '{sym.name}' is ill-formed: {exc.message}", sym.span))
            continue
        signature.set_sort(sym.name, sort)
        if not sym.is_const_pred:
            continue
        cls = classify(sym.type, signature.symbol_sorts())
        if cls not in (TermClass.KIND, TermClass.SORT) or sort is not SortKind.BOX:
            errors.append(TypingError(
                ErrorKind.INVALID_DECLARATION,
                f"data '{sym.name}' must be declared with a kind, got {show_term(sym.type)}", sym.span))
        elif size_vars(sym.type):
            errors.append(TypingError(
                ErrorKind.INVALID_DECLARATION, f"kind of data '{sym.name}' carries size variables", sym.span))
    logger.debug("signature checked: %d symbols, %d errors", len(signature.symbols), len(errors))
    return errors


def validate_env(signature: Signature, env: Env, fuel: int = DEFAULT_FUEL) -> Env:
    """Sort every declared type left to right; returns the env with sorts filled in."""
    checked = Env()
    for entry in env:
        session = InferSession(signature, used=set(size_vars(entry.type)), fuel=fuel)
        sort = check_sorted(signature, checked, entry.type, session)
        checked = checked.extend(entry.name, entry.type, sort)
    return checked


def _is_algebraic(t: Term) -> bool:
    if isinstance(t, (Var, Sort)):
        return True
    head, args = spine(t)
    return isinstance(head, (Symb, ConstPred)) and all(_is_algebraic(a) for a in args)


def _rule_problems(signature: Signature, rule: RewriteRule) -> List[str]:
    head, args = spine(rule.lhs)
    if isinstance(head, ConstPred):
        return [f"rule is headed by data symbol '{head.name}'"]
    if not isinstance(head, Symb):
        return [f"left-hand side {show_term(rule.lhs)} is not headed by a symbol"]
    problems: List[str] = []
    if not all(_is_algebraic(a) for a in args):
        problems.append(f"left-hand side {show_term(rule.lhs)} is not algebraic")
    extra: Set[str] = free_vars(rule.rhs) - free_vars(rule.lhs)
    if extra:
        problems.append(f"right-hand side mentions {', '.join(sorted(extra))} not bound by the left-hand side")
    sym = signature.lookup(head.name)
    if sym is not None and len(args) > sym.arity:
        problems.append(f"'{head.name}' takes at most {sym.arity} arguments, rule gives {len(args)}")
    if not (is_infinity_term(rule.lhs) and is_infinity_term(rule.rhs)):
        problems.append("rules may not carry size annotations")
    return problems


def validate_rules(signature: Signature) -> List[TypingError]:
    errors: List[TypingError] = []
    for rule in signature.rules:
        for message in _rule_problems(signature, rule):
            errors.append(TypingError(ErrorKind.ILL_FORMED_RULE, message, rule.span))
    return errors
