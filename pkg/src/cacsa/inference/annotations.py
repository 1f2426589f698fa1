"""
annotations.py

Heuristic validity check of a symbol's size annotations against its rewrite
rules. For a rule f l1 .. ln --> r:

  1. the left-hand side is typed top-down against f's declared type, keeping
     the declared size variables; pattern variables receive the type
     expected at their position (or the `[in x:T]` hint) and wildcards are
     solved by first-order unification;
  2. every ∞ annotation of r becomes a fresh size variable and r is typed
     with deferred inference in the pattern environment;
  3. the pattern constraints, the collected constraints and r's type ≤ the
     left-hand side's type are solved together.

The rule is accepted when the problem is satisfiable and no declared size
variable is forced to ∞. `annotate_symbol` also solves the conjunction of
all rules of a symbol, which is where an output annotation like X in
`minus : nat^a -> nat^b -> nat^X` gets identified with an input.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from cacsa.constraints.generation import gen_sub
from cacsa.constraints.problem import TOP, ConstraintProblem, conj, eq, leq
from cacsa.inference.errors import ErrorKind, TypingError
from cacsa.inference.infer import infer_deferred
from cacsa.inference.session import InferSession
from cacsa.rewriting.reduction import DEFAULT_FUEL
from cacsa.sizes.algebra import INFTY, FreshSupply, SizeVar, normalize, show_size, size_var
from cacsa.sizes.substitution import SizeSubst
from cacsa.solver.solve import SolveResult, solve
from cacsa.terms.printer import show_term
from cacsa.terms.signature import Env, RewriteRule, Signature
from cacsa.terms.term import (
    BOX, STAR, Abs, App, ConstPred, Prod, Sort, Symb, Term, Var,
    align_binders, free_vars, map_annotations, product_spine, size_vars, spine, subst_term,
)

logger = logging.getLogger(__name__)


def is_wildcard(name: str) -> bool:
    return name.startswith("_") and name[1:].isdigit()


def declared_size_vars(ty: Term) -> List[SizeVar]:
    """Size variables of ty in order of first occurrence."""
    seen: List[SizeVar] = []

    def visit(a):
        if a.base is not None and a.base not in seen:
            seen.append(a.base)
        return a

    map_annotations(ty, visit)
    return seen


def output_size_var(ty: Term) -> Optional[SizeVar]:
    """Annotation variable of the codomain's head, if it has one."""
    _, codomain = product_spine(ty)
    head, _ = spine(codomain)
    if isinstance(head, ConstPred) and head.ann.base is not None:
        return head.ann.base
    return None


# ---------------- Pattern typing ----------------

class PatternTyper:
    """Types a left-hand side top-down, collecting constraints and wildcard bindings."""

    def __init__(self, signature: Signature, session: InferSession, hints: Dict[str, Term]) -> None:
        self.signature = signature
        self.session = session
        self.hints = hints
        self.env = Env()
        self.theta: Dict[str, Term] = {}
        self.problem: ConstraintProblem = TOP

    def apply(self, t: Term) -> Term:
        return subst_term(self.theta, t) if self.theta else t

    def _add(self, problem: ConstraintProblem) -> None:
        self.problem = conj(self.problem, problem)

    def _bind(self, name: str, value: Term) -> None:
        self.theta = {k: subst_term({name: value}, v) for k, v in self.theta.items()}
        self.theta[name] = value

    def _mismatch(self, t: Term, u: Term) -> TypingError:
        return TypingError(ErrorKind.ILL_FORMED_RULE, f"pattern part {show_term(t)} cannot match {show_term(u)}")

    def unify(self, t: Term, u: Term) -> None:
        t, u = self.apply(t), self.apply(u)
        for x, y in ((t, u), (u, t)):
            if isinstance(x, Var) and is_wildcard(x.name):
                if x == y:
                    return
                if x.name in free_vars(y):
                    raise self._mismatch(t, u)
                self._bind(x.name, y)
                return
        if isinstance(t, ConstPred) and isinstance(u, ConstPred) and t.name == u.name:
            self._add(conj(eq(t.ann, u.ann), leq(INFTY, t.ann)))
        elif isinstance(t, App) and isinstance(u, App):
            self.unify(t.fun, u.fun)
            self.unify(t.arg, u.arg)
        elif (isinstance(t, Prod) and isinstance(u, Prod)) or (isinstance(t, Abs) and isinstance(u, Abs)):
            _, tb, ub = align_binders(t, u)
            self.unify(t.binder_type, u.binder_type)
            self.unify(tb, ub)
        elif not (isinstance(t, (Sort, Var, Symb)) and t == u):
            raise self._mismatch(t, u)

    def relate(self, actual: Term, expected: Term) -> None:
        """Require actual ≤ expected."""
        a = self.session.normalize(self.apply(actual))
        e = self.session.normalize(self.apply(expected))
        if isinstance(a, Prod) and isinstance(e, Prod):
            _, ab, eb = align_binders(a, e)
            self.relate(e.binder_type, a.binder_type)
            self.relate(ab, eb)
            return
        a_head, a_args = spine(a)
        e_head, e_args = spine(e)
        if (isinstance(a_head, ConstPred) and isinstance(e_head, ConstPred)
                and a_head.name == e_head.name and len(a_args) == len(e_args)):
            self._add(leq(a_head.ann, e_head.ann))
            for x, y in zip(a_args, e_args):
                self.unify(x, y)
            return
        self.unify(a, e)

    def walk(self, fun_type: Term, args: Sequence[Term]) -> Term:
        current = fun_type
        for arg in args:
            product = self.session.normalize(self.apply(current))
            if not isinstance(product, Prod):
                raise TypingError(ErrorKind.ILL_FORMED_RULE, f"too many arguments at {show_term(arg)}")
            self.type_argument(arg, product.binder_type)
            current = subst_term({product.binder: arg}, product.body)
        return current

    def type_argument(self, pattern: Term, expected: Term) -> None:
        expected = self.apply(expected)
        if isinstance(pattern, Var):
            entry = self.env.lookup(pattern.name)
            if entry is not None:
                self.relate(entry.type, expected)
            elif pattern.name in self.hints:
                self.env = self.env.extend(pattern.name, self.hints[pattern.name])
                self.relate(self.hints[pattern.name], expected)
            else:
                self.env = self.env.extend(pattern.name, expected)
            return
        if isinstance(pattern, Sort):
            if pattern != STAR:
                raise self._mismatch(pattern, expected)
            self.relate(BOX, expected)
            return
        head, args = spine(pattern)
        sym = self.signature.lookup(head.name) if isinstance(head, (Symb, ConstPred)) else None
        if sym is None:
            raise TypingError(ErrorKind.ILL_FORMED_RULE, f"pattern {show_term(pattern)} is not algebraic")
        head_type = self.session.rename_fresh(sym.type) if isinstance(head, Symb) else sym.type
        self.relate(self.walk(head_type, args), expected)

    def final_env(self) -> Env:
        return self.env.map_types(self.apply)


# ---------------- Reports ----------------

def _relation(mgs: Optional[SizeSubst], output_var: Optional[SizeVar], declared: Sequence[SizeVar]) -> str:
    if mgs is None:
        return "unsatisfiable"
    images = {v: normalize(mgs.get(v)) for v in declared}
    if output_var is not None:
        out = images.get(output_var, normalize(mgs.get(output_var)))
        if out.is_infinite:
            return f"{output_var} = oo (not size-preserving)"
        for v in declared:
            if v != output_var and images[v] == out:
                return f"{output_var} = {v}"
    if not declared:
        return "no size annotations"
    return ", ".join(f"{v} := {show_size(images[v])}" for v in declared)


def _accepted(mgs: Optional[SizeSubst], declared: Sequence[SizeVar]) -> bool:
    return mgs is not None and not any(normalize(mgs.get(v)).is_infinite for v in declared)


@dataclass(frozen=True)
class AnnotationReport:
    rule: RewriteRule
    problem: ConstraintProblem
    result: SolveResult
    output_var: Optional[SizeVar]
    declared_vars: Tuple[SizeVar, ...]
    env: Env
    trace: Tuple[str, ...] = ()

    @property
    def accepted(self) -> bool:
        return _accepted(self.result.mgs, self.declared_vars)

    def relation(self) -> str:
        return _relation(self.result.mgs, self.output_var, self.declared_vars)


@dataclass(frozen=True)
class SymbolAnnotation:
    name: str
    output_var: Optional[SizeVar]
    declared_vars: Tuple[SizeVar, ...]
    reports: Tuple[AnnotationReport, ...]
    combined: SolveResult

    @property
    def accepted(self) -> bool:
        return all(r.accepted for r in self.reports) and _accepted(self.combined.mgs, self.declared_vars)

    def relation(self) -> str:
        return _relation(self.combined.mgs, self.output_var, self.declared_vars)


def check_rule_annotations(
    signature: Signature,
    rule: RewriteRule,
    output_var: Optional[SizeVar] = None,
    used: Optional[Set[SizeVar]] = None,
    fuel: int = DEFAULT_FUEL,
    trace: bool = False,
) -> AnnotationReport:
    sym = signature.lookup(rule.head) if rule.head is not None else None
    if sym is None or sym.is_const_pred:
        raise TypingError(ErrorKind.ILL_FORMED_RULE, "rule is not headed by a declared function symbol", rule.span)
    declared = declared_size_vars(sym.type)
    if output_var is None:
        output_var = output_size_var(sym.type)
    hints = dict(rule.env)

    session = InferSession(signature, used if used is not None else set(), fuel, trace, deferred=True)
    session.reserve(declared)
    for hint in hints.values():
        session.reserve(size_vars(hint))

    typer = PatternTyper(signature, session, hints)
    try:
        lhs_type = typer.apply(typer.walk(sym.type, rule.args))
        env = typer.final_env()
        rhs = map_annotations(rule.rhs, lambda a: size_var(session.fresh()) if a.is_infinite else a)
        rhs_type, collected = infer_deferred(signature, env, rhs, session)
        problem = conj(
            typer.problem,
            collected,
            gen_sub(session.normalize(rhs_type), session.normalize(lhs_type)),
        )
    except TypingError as exc:
        raise exc.at(rule.span)
    result = session.solve(problem)
    logger.debug("rule %s: %s", show_term(rule.lhs), result.mgs)
    return AnnotationReport(
        rule, problem, result, output_var, tuple(declared), env, tuple(session.trace_lines))


def annotate_symbol(
    signature: Signature, name: str, fuel: int = DEFAULT_FUEL, trace: bool = False,
) -> SymbolAnnotation:
    """Check every rule of `name` and solve all their constraints together."""
    sym = signature.lookup(name)
    if sym is None:
        raise TypingError(ErrorKind.INVALID_DECLARATION, f"undeclared symbol '{name}'")
    used: Set[SizeVar] = set()
    reports = tuple(
        check_rule_annotations(signature, rule, used=used, fuel=fuel, trace=trace)
        for rule in signature.rules_for(name)
    )
    combined = solve(conj(*(r.problem for r in reports)), FreshSupply(used=used))
    return SymbolAnnotation(
        name, output_size_var(sym.type), tuple(declared_size_vars(sym.type)), reports, combined)
