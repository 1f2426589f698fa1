"""
term.py

Terms of the calculus: sorts, variables, size-annotated constant predicate
symbols, other symbols, abstraction, product and application. Terms are
immutable values compared up to renaming of bound variables via `alpha_eq`.
"""
from __future__ import annotations
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Mapping, Optional, Set, Tuple, Union

from cacsa.sizes.algebra import INFTY, SizeExpr, SizeVar
from cacsa.sizes.substitution import SizeSubst


class SortKind(Enum):
    STAR = "Type"
    BOX = "Kind"


class TermClass(Enum):
    OBJECT = "object"
    PREDICATE = "predicate"
    KIND = "kind"
    SORT = "sort"
    OTHER = "other"


@dataclass(frozen=True)
class Sort:
    kind: SortKind


@dataclass(frozen=True)
class Var:
    name: str
    # Assigned at binding sites; not part of the term's identity.
    sort: Optional[SortKind] = field(default=None, compare=False)


@dataclass(frozen=True)
class ConstPred:
    name: str
    ann: SizeExpr = INFTY


@dataclass(frozen=True)
class Symb:
    name: str


@dataclass(frozen=True)
class Abs:
    binder: str
    binder_type: "Term"
    body: "Term"


@dataclass(frozen=True)
class Prod:
    binder: str
    binder_type: "Term"
    body: "Term"


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


Term = Union[Sort, Var, ConstPred, Symb, Abs, Prod, App]
Binder = Union[Abs, Prod]
TermSubst = Mapping[str, Term]

STAR = Sort(SortKind.STAR)
BOX = Sort(SortKind.BOX)
ARROW_BINDER = "_"


# ---------------- Construction helpers ----------------

def app(head: Term, *args: Term) -> Term:
    t = head
    for a in args:
        t = App(t, a)
    return t


def arrow(domain: Term, codomain: Term) -> Prod:
    """Non-dependent product domain -> codomain."""
    binder = ARROW_BINDER
    if binder in free_vars(codomain):
        binder = fresh_name(binder, free_vars(codomain))
    return Prod(binder, domain, codomain)


def spine(t: Term) -> Tuple[Term, List[Term]]:
    """Split a left-nested application into head and arguments."""
    args: List[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def product_spine(t: Term) -> Tuple[List[Tuple[str, Term]], Term]:
    """(x1:T1)…(xn:Tn)U ↦ ([(x1,T1), …], U)."""
    binders: List[Tuple[str, Term]] = []
    while isinstance(t, Prod):
        binders.append((t.binder, t.binder_type))
        t = t.body
    return binders, t


def fresh_name(base: str, avoid: Set[str]) -> str:
    name = base
    while name in avoid:
        name += "'"
    return name


# ---------------- Variables ----------------

def free_vars(t: Term) -> Set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    if isinstance(t, (Abs, Prod)):
        return free_vars(t.binder_type) | (free_vars(t.body) - {t.binder})
    return set()


def size_vars(t: Term) -> Set[SizeVar]:
    if isinstance(t, ConstPred):
        return t.ann.variables()
    if isinstance(t, App):
        return size_vars(t.fun) | size_vars(t.arg)
    if isinstance(t, (Abs, Prod)):
        return size_vars(t.binder_type) | size_vars(t.body)
    return set()


def is_infinity_term(t: Term) -> bool:
    return not size_vars(t)


# ---------------- α-equivalence ----------------

def _bound_index(env: List[str], name: str) -> Optional[int]:
    for i in range(len(env) - 1, -1, -1):
        if env[i] == name:
            return len(env) - 1 - i
    return None


def _alpha(t: Term, u: Term, lenv: List[str], renv: List[str]) -> bool:
    if isinstance(t, Var) and isinstance(u, Var):
        li, ri = _bound_index(lenv, t.name), _bound_index(renv, u.name)
        if li is None and ri is None:
            return t.name == u.name
        return li == ri
    if isinstance(t, App) and isinstance(u, App):
        return _alpha(t.fun, u.fun, lenv, renv) and _alpha(t.arg, u.arg, lenv, renv)
    if (isinstance(t, Abs) and isinstance(u, Abs)) or (isinstance(t, Prod) and isinstance(u, Prod)):
        return (_alpha(t.binder_type, u.binder_type, lenv, renv)
                and _alpha(t.body, u.body, lenv + [t.binder], renv + [u.binder]))
    if isinstance(t, (Sort, ConstPred, Symb)):
        return t == u
    return False


def alpha_eq(t: Term, u: Term) -> bool:
    """Equality up to renaming of bound variables; annotations compare syntactically."""
    return _alpha(t, u, [], [])


# ---------------- Substitution ----------------

def _rename(t: Term, old: str, new: str) -> Term:
    """Rename free occurrences of `old`, keeping each occurrence's sort."""
    if isinstance(t, Var):
        return Var(new, t.sort) if t.name == old else t
    if isinstance(t, App):
        return App(_rename(t.fun, old, new), _rename(t.arg, old, new))
    if isinstance(t, (Abs, Prod)):
        ty = _rename(t.binder_type, old, new)
        if t.binder == old:
            return type(t)(t.binder, ty, t.body)
        binder, body = t.binder, t.body
        if binder == new and old in free_vars(body):
            moved = fresh_name(binder, free_vars(body) | {old, new})
            body = _rename(body, binder, moved)
            binder = moved
        return type(t)(binder, ty, _rename(body, old, new))
    return t


def subst_term(sigma: TermSubst, t: Term) -> Term:
    """Capture-avoiding application of a term substitution."""
    if not sigma:
        return t
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if isinstance(t, App):
        return App(subst_term(sigma, t.fun), subst_term(sigma, t.arg))
    if isinstance(t, (Abs, Prod)):
        ty = subst_term(sigma, t.binder_type)
        body_fv = free_vars(t.body)
        inner = {k: v for k, v in sigma.items() if k != t.binder and k in body_fv}
        if not inner:
            return type(t)(t.binder, ty, t.body)
        range_fv: Set[str] = set()
        for v in inner.values():
            range_fv |= free_vars(v)
        binder, body = t.binder, t.body
        if binder in range_fv:
            binder = fresh_name(binder, range_fv | body_fv | set(inner))
            body = _rename(body, t.binder, binder)
        return type(t)(binder, ty, subst_term(inner, body))
    return t


def map_annotations(t: Term, fn: Callable[[SizeExpr], SizeExpr]) -> Term:
    if isinstance(t, ConstPred):
        return ConstPred(t.name, fn(t.ann))
    if isinstance(t, App):
        return App(map_annotations(t.fun, fn), map_annotations(t.arg, fn))
    if isinstance(t, (Abs, Prod)):
        return type(t)(t.binder, map_annotations(t.binder_type, fn), map_annotations(t.body, fn))
    return t


def subst_size(phi: SizeSubst, t: Term) -> Term:
    """Apply φ to every annotation, re-normalizing."""
    if not phi.items:
        return t
    return map_annotations(t, phi.apply)


def erase_sizes(t: Term) -> Term:
    """The ∞-term obtained by replacing every annotation with ∞."""
    return map_annotations(t, lambda _a: INFTY)


def align_binders(t: Binder, u: Binder) -> Tuple[str, Term, Term]:
    """Rename both bodies to one common binder name."""
    if t.binder == u.binder:
        return t.binder, t.body, u.body
    if t.binder not in free_vars(u.body):
        return t.binder, t.body, _rename(u.body, u.binder, t.binder)
    if u.binder not in free_vars(t.body):
        return u.binder, _rename(t.body, t.binder, u.binder), u.body
    name = fresh_name(t.binder, free_vars(t.body) | free_vars(u.body))
    return name, _rename(t.body, t.binder, name), _rename(u.body, u.binder, name)


# ---------------- Classification ----------------

def classify(
    t: Term,
    symbol_sorts: Optional[Dict[str, SortKind]] = None,
    var_sorts: Optional[Dict[str, SortKind]] = None,
) -> TermClass:
    """Syntactic class of t: object, predicate, kind, sort or other.

    Symbols and variables whose sort is unknown are taken to be of sort ⋆.
    """
    symbol_sorts = symbol_sorts or {}
    var_sorts = dict(var_sorts or {})

    def sort_of_var(v: Var) -> SortKind:
        return v.sort or var_sorts.get(v.name, SortKind.STAR)

    def go(u: Term, bound: Dict[str, SortKind]) -> TermClass:
        if isinstance(u, Sort):
            return TermClass.SORT
        if isinstance(u, ConstPred):
            return TermClass.PREDICATE
        if isinstance(u, Var):
            s = bound.get(u.name) or sort_of_var(u)
            return TermClass.PREDICATE if s is SortKind.BOX else TermClass.OBJECT
        if isinstance(u, Symb):
            s = symbol_sorts.get(u.name, SortKind.STAR)
            return TermClass.PREDICATE if s is SortKind.BOX else TermClass.OBJECT
        if isinstance(u, (Abs, Prod)):
            # A binder whose type is a kind (or ⋆) introduces a predicate variable.
            dom = go(u.binder_type, bound)
            inner = dict(bound)
            inner[u.binder] = SortKind.BOX if dom in (TermClass.KIND, TermClass.SORT) else SortKind.STAR
            body = go(u.body, inner)
            if isinstance(u, Prod):
                if body is TermClass.KIND or u.body == STAR:
                    return TermClass.KIND
                if body is TermClass.PREDICATE:
                    return TermClass.PREDICATE
                return TermClass.OTHER
            if body in (TermClass.OBJECT, TermClass.PREDICATE):
                return body
            return TermClass.OTHER
        if isinstance(u, App):
            fun = go(u.fun, bound)
            return fun if fun in (TermClass.OBJECT, TermClass.PREDICATE) else TermClass.OTHER
        return TermClass.OTHER

    return go(t, {})
