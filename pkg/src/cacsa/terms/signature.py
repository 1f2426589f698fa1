"""
signature.py

Symbol declarations, rewrite rules, typing environments and source spans.
A Signature is filled once while a source file is loaded and treated as
read-only afterwards (sorts are recorded by signature validation).
"""
from __future__ import annotations
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterator, List, Optional, Set, Tuple

from cacsa.sizes.algebra import SizeVar
from cacsa.terms.term import ConstPred, SortKind, Symb, Term, product_spine, size_vars, spine


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class SymbolSig:
    name: str
    type: Term
    is_const_pred: bool = False
    sort: Optional[SortKind] = None
    span: Optional[SourceSpan] = None

    @property
    def arity(self) -> int:
        binders, _ = product_spine(self.type)
        return len(binders)


@dataclass(frozen=True)
class RewriteRule:
    """lhs --> rhs, with optional typing hints `[in x:T, ...]` for pattern variables."""
    lhs: Term
    rhs: Term
    env: Tuple[Tuple[str, Term], ...] = ()
    span: Optional[SourceSpan] = None

    @property
    def head(self) -> Optional[str]:
        h, _ = spine(self.lhs)
        return h.name if isinstance(h, (Symb, ConstPred)) else None

    @property
    def args(self) -> List[Term]:
        return spine(self.lhs)[1]


class Signature:
    """Declared symbols (in declaration order) and rewrite rules."""

    def __init__(self) -> None:
        self.symbols: Dict[str, SymbolSig] = {}
        self.rules: List[RewriteRule] = []
        self._rules_by_head: Dict[str, List[RewriteRule]] = {}

    # ---------------- Declarations ----------------
    def declare(self, sym: SymbolSig) -> None:
        if sym.name in self.symbols:
            raise ValueError(f"symbol '{sym.name}' declared twice")
        self.symbols[sym.name] = sym

    def add_rule(self, rule: RewriteRule) -> None:
        self.rules.append(rule)
        if rule.head is not None:
            self._rules_by_head.setdefault(rule.head, []).append(rule)

    def set_sort(self, name: str, sort: SortKind) -> None:
        self.symbols[name] = replace(self.symbols[name], sort=sort)

    # ---------------- Queries ----------------
    def lookup(self, name: str) -> Optional[SymbolSig]:
        return self.symbols.get(name)

    def is_const_pred(self, name: str) -> bool:
        sym = self.symbols.get(name)
        return bool(sym and sym.is_const_pred)

    def rules_for(self, head: str) -> List[RewriteRule]:
        return self._rules_by_head.get(head, [])

    def symbol_sorts(self) -> Dict[str, SortKind]:
        return {n: s.sort for n, s in self.symbols.items() if s.sort is not None}


@dataclass(frozen=True)
class EnvEntry:
    name: str
    type: Term
    sort: Optional[SortKind] = None


@dataclass(frozen=True)
class Env:
    """Ordered typing environment; later entries may mention earlier ones."""
    entries: Tuple[EnvEntry, ...] = field(default_factory=tuple)

    def extend(self, name: str, type_: Term, sort: Optional[SortKind] = None) -> "Env":
        return Env(self.entries + (EnvEntry(name, type_, sort),))

    def lookup(self, name: str) -> Optional[EnvEntry]:
        for entry in reversed(self.entries):
            if entry.name == name:
                return entry
        return None

    @property
    def names(self) -> Set[str]:
        return {e.name for e in self.entries}

    def size_vars(self) -> Set[SizeVar]:
        out: Set[SizeVar] = set()
        for e in self.entries:
            out |= size_vars(e.type)
        return out

    def map_types(self, fn: Callable[[Term], Term]) -> "Env":
        return Env(tuple(EnvEntry(e.name, fn(e.type), e.sort) for e in self.entries))

    def __iter__(self) -> Iterator[EnvEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)
