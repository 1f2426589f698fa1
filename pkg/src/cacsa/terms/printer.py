"""
printer.py

Surface-syntax rendering of sizes and terms. Output parses back with
`cacsa.syntax.grammar` as long as every name is a user-visible identifier
(solver-generated `$n` size variables are printed but do not re-parse).
"""
from __future__ import annotations

from cacsa.sizes.algebra import SizeExpr, show_size
from cacsa.terms.term import (
    Abs, App, ConstPred, Prod, Sort, SortKind, Symb, Term, Var, free_vars,
)


def show_annotation(a: SizeExpr) -> str:
    text = show_size(a)
    return text if " " not in text else f"({text})"


def _atom(t: Term) -> str:
    if isinstance(t, (App, Abs, Prod)):
        return f"({show_term(t)})"
    return show_term(t)


def _app_level(t: Term) -> str:
    # Left operand of `->` must stay an application.
    if isinstance(t, (Abs, Prod)):
        return f"({show_term(t)})"
    return show_term(t)


def show_term(t: Term) -> str:
    if isinstance(t, Sort):
        return "Type" if t.kind is SortKind.STAR else "Kind"
    if isinstance(t, (Var, Symb)):
        return t.name
    if isinstance(t, ConstPred):
        if t.ann.is_infinite and t.ann.shift == 0:
            return t.name
        return f"{t.name}^{show_annotation(t.ann)}"
    if isinstance(t, App):
        return f"{_app_level(t.fun)} {_atom(t.arg)}"
    if isinstance(t, Prod):
        if t.binder not in free_vars(t.body):
            return f"{_app_level(t.binder_type)} -> {show_term(t.body)}"
        return f"({t.binder}:{show_term(t.binder_type)}) {show_term(t.body)}"
    if isinstance(t, Abs):
        return f"[{t.binder}:{show_term(t.binder_type)}] {show_term(t.body)}"
    raise TypeError(f"not a term: {t!r}")
