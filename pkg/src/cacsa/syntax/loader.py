"""
loader.py

Turns a parse tree into declarations, goals and a Signature. Identifiers are
resolved in declaration order:

    bound by an enclosing binder  -> variable
    Type / Kind                   -> sort
    `_` in a rule left-hand side  -> a fresh wildcard variable `_1`, `_2`, ...
    declared with `data`          -> constant predicate symbol (annotation oo
                                     unless given)
    declared with `symbol`        -> symbol
    anything else                 -> variable (pattern or assumed variable)
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from itertools import count
from pathlib import Path
from typing import Iterator, List, Optional, Set, Tuple, Union

from lark import Token, Tree

from cacsa.sizes.algebra import INFTY, SizeExpr, size_var, succ
from cacsa.syntax.grammar import ParseError, parse
from cacsa.terms.printer import show_term
from cacsa.terms.signature import Env, RewriteRule, Signature, SourceSpan, SymbolSig
from cacsa.terms.term import (
    BOX, STAR, Abs, App, ConstPred, Prod, Symb, Term, Var, arrow,
)

logger = logging.getLogger(__name__)


# ---------------- Declarations ----------------

@dataclass(frozen=True)
class DataDecl:
    name: str
    type: Term
    span: SourceSpan

    def render(self) -> str:
        return f"data {self.name} : {show_term(self.type)} ."


@dataclass(frozen=True)
class SymbolDecl:
    name: str
    type: Term
    span: SourceSpan

    def render(self) -> str:
        return f"symbol {self.name} : {show_term(self.type)} ."


@dataclass(frozen=True)
class RuleDecl:
    rule: RewriteRule
    span: SourceSpan

    def render(self) -> str:
        text = f"rule {show_term(self.rule.lhs)} --> {show_term(self.rule.rhs)}"
        if self.rule.env:
            text += " [in " + ", ".join(f"{x} : {show_term(t)}" for x, t in self.rule.env) + "]"
        return text + " ."


@dataclass(frozen=True)
class AssumeDecl:
    name: str
    type: Term
    span: SourceSpan

    def render(self) -> str:
        return f"assume {self.name} : {show_term(self.type)} ."


@dataclass(frozen=True)
class InferGoal:
    term: Term
    span: SourceSpan

    def render(self) -> str:
        return f"infer {show_term(self.term)} ."


@dataclass(frozen=True)
class CheckGoal:
    term: Term
    type: Term
    span: SourceSpan

    def render(self) -> str:
        return f"check {show_term(self.term)} : {show_term(self.type)} ."


@dataclass(frozen=True)
class AnnotateGoal:
    name: str
    span: SourceSpan

    def render(self) -> str:
        return f"annotate {self.name} ."


Declaration = Union[DataDecl, SymbolDecl, RuleDecl, AssumeDecl, InferGoal, CheckGoal, AnnotateGoal]
Goal = Union[InferGoal, CheckGoal, AnnotateGoal]


@dataclass
class SourceFile:
    path: str
    declarations: List[Declaration] = field(default_factory=list)
    signature: Signature = field(default_factory=Signature)

    @property
    def goals(self) -> List[Goal]:
        return [d for d in self.declarations if isinstance(d, (InferGoal, CheckGoal, AnnotateGoal))]

    def assumptions(self) -> Env:
        env = Env()
        for d in self.declarations:
            if isinstance(d, AssumeDecl):
                env = env.extend(d.name, d.type)
        return env

    def render(self) -> str:
        return "\n".join(d.render() for d in self.declarations) + "\n"


# ---------------- Resolution ----------------

def _span(node: Union[Tree, Token]) -> SourceSpan:
    if isinstance(node, Token):
        return SourceSpan(node.line, node.column)
    return SourceSpan(node.meta.line, node.meta.column)


class _Resolver:
    def __init__(self, signature: Signature) -> None:
        self.signature = signature
        self._wildcards: Optional[Iterator[int]] = None

    def size(self, node: Union[Tree, Token]) -> SizeExpr:
        if node.data == "size_succ":
            return succ(self.size(node.children[0]))
        name = str(node.children[0])
        return INFTY if name == "oo" else size_var(name)

    def identifier(self, token: Token, bound: Set[str]) -> Term:
        name = str(token)
        if name in bound:
            return Var(name)
        if name == "Type":
            return STAR
        if name == "Kind":
            return BOX
        if name == "_" and self._wildcards is not None:
            return Var(f"_{next(self._wildcards)}")
        sym = self.signature.lookup(name)
        if sym is None:
            return Var(name)
        return ConstPred(name) if sym.is_const_pred else Symb(name)

    def term(self, node: Union[Tree, Token], bound: Set[str] = frozenset()) -> Term:
        kind = node.data
        if kind == "ident":
            return self.identifier(node.children[0], bound)
        if kind == "annotated":
            token, size_node = node.children
            head = self.identifier(token, bound)
            if not isinstance(head, ConstPred):
                raise ParseError(f"'{token}' is not a data symbol and cannot carry a size", token.line, token.column)
            return ConstPred(head.name, self.size(size_node))
        if kind == "application":
            fun, arg = node.children
            return App(self.term(fun, bound), self.term(arg, bound))
        if kind == "arrow":
            dom, cod = node.children
            return arrow(self.term(dom, bound), self.term(cod, bound))
        if kind in ("prod", "abs"):
            name_tok, ty, body = node.children
            name = str(name_tok)
            ctor = Prod if kind == "prod" else Abs
            return ctor(name, self.term(ty, bound), self.term(body, set(bound) | {name}))
        raise ParseError(f"unexpected syntax '{kind}'", *_position(node))

    def pattern(self, node: Tree) -> Term:
        self._wildcards = count(1)
        try:
            return self.term(node)
        finally:
            self._wildcards = None


def _position(node: Tree) -> Tuple[int, int]:
    meta = getattr(node, "meta", None)
    line = getattr(meta, "line", 1) if meta is not None else 1
    column = getattr(meta, "column", 1) if meta is not None else 1
    return line, column


def _declare(signature: Signature, sym: SymbolSig) -> None:
    try:
        signature.declare(sym)
    except ValueError as exc:
        raise ParseError(str(exc), sym.span.line, sym.span.column) from exc


def load_source(text: str, path: str = "<string>") -> SourceFile:
    """Parse and resolve a whole file; raises ParseError on the first problem."""
    tree = parse(text)
    source = SourceFile(path)
    resolver = _Resolver(source.signature)
    for node in tree.children:
        span = _span(node)
        kind = node.data
        if kind in ("data_decl", "symbol_decl"):
            name_tok, ty = node.children
            sym = SymbolSig(str(name_tok), resolver.term(ty), kind == "data_decl", span=span)
            _declare(source.signature, sym)
            decl_type = DataDecl if kind == "data_decl" else SymbolDecl
            source.declarations.append(decl_type(sym.name, sym.type, span))
        elif kind == "rule_decl":
            lhs = resolver.pattern(node.children[0])
            rhs = resolver.term(node.children[1])
            env: Tuple[Tuple[str, Term], ...] = ()
            if len(node.children) > 2:
                env = tuple((str(b.children[0]), resolver.term(b.children[1])) for b in node.children[2].children)
            rule = RewriteRule(lhs, rhs, env, span)
            source.signature.add_rule(rule)
            source.declarations.append(RuleDecl(rule, span))
        elif kind == "assume_decl":
            name_tok, ty = node.children
            source.declarations.append(AssumeDecl(str(name_tok), resolver.term(ty), span))
        elif kind == "infer_goal":
            source.declarations.append(InferGoal(resolver.term(node.children[0]), span))
        elif kind == "check_goal":
            t, ty = node.children
            source.declarations.append(CheckGoal(resolver.term(t), resolver.term(ty), span))
        elif kind == "annotate_goal":
            source.declarations.append(AnnotateGoal(str(node.children[0]), span))
    logger.debug("%s: %d declarations", path, len(source.declarations))
    return source


def load_file(path: Union[str, Path]) -> SourceFile:
    path = Path(path)
    return load_source(path.read_text(encoding="utf-8"), str(path))
