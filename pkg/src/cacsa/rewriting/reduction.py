"""
reduction.py

β ∪ R reduction to normal form under a step budget, and convertibility.

Strategy: contract at the root while possible (β before rules, rules in
declaration order), then normalize the children and retry the root if any
child changed. Termination of β ∪ R is assumed, not checked; the budget turns
divergence into a `FuelExhausted` error.
"""
from __future__ import annotations
import logging
from typing import Dict, Optional

from cacsa.rewriting.matching import match_pattern
from cacsa.terms.signature import Signature
from cacsa.terms.term import Abs, App, Prod, Symb, Term, alpha_eq, app, spine, subst_term

logger = logging.getLogger(__name__)

DEFAULT_FUEL = 100_000


class FuelExhausted(RuntimeError):
    """Raised when normalization needs more steps than allowed."""

    def __init__(self, steps: int, term: Term) -> None:
        super().__init__(f"normalization did not finish within {steps} steps")
        self.steps = steps
        self.term = term


class Reducer:
    """Normalizes terms against one signature; normal forms are memoized."""

    def __init__(self, signature: Signature, fuel: int = DEFAULT_FUEL) -> None:
        if fuel <= 0:
            raise ValueError("fuel must be positive")
        self.signature = signature
        self.fuel = fuel
        self.steps = 0
        self._cache: Dict[Term, Term] = {}

    # ---------------- Single steps ----------------
    def root_step(self, t: Term) -> Optional[Term]:
        """Contract a redex at the root of t, if there is one."""
        if isinstance(t, App) and isinstance(t.fun, Abs):
            return subst_term({t.fun.binder: t.arg}, t.fun.body)
        head, args = spine(t)
        if not isinstance(head, Symb):
            return None
        for rule in self.signature.rules_for(head.name):
            n = len(rule.args)
            if n > len(args):
                continue
            sigma = match_pattern(rule.lhs, app(head, *args[:n]))
            if sigma is not None:
                logger.debug("rule %s fires", head.name)
                return app(subst_term(sigma, rule.rhs), *args[n:])
        return None

    def _tick(self, t: Term) -> None:
        self.steps += 1
        if self.steps > self.fuel:
            raise FuelExhausted(self.fuel, t)

    # ---------------- Normalization ----------------
    def _children(self, t: Term) -> Term:
        if isinstance(t, App):
            return App(self._norm(t.fun), self._norm(t.arg))
        if isinstance(t, (Abs, Prod)):
            return type(t)(t.binder, self._norm(t.binder_type), self._norm(t.body))
        return t

    def _norm(self, t: Term) -> Term:
        cached = self._cache.get(t)
        if cached is not None:
            return cached
        start = t
        while True:
            reduct = self.root_step(t)
            if reduct is not None:
                self._tick(t)
                t = reduct
                continue
            inner = self._children(t)
            if inner == t:
                break
            t = inner
            if self.root_step(t) is None:
                break
        self._cache[start] = t
        return t

    def normalize(self, t: Term) -> Term:
        """t↓; the step budget applies to each call."""
        self.steps = 0
        return self._norm(t)

    def convertible(self, t: Term, u: Term) -> bool:
        return alpha_eq(self.normalize(t), self.normalize(u))


def normalize_term(signature: Signature, t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    return Reducer(signature, fuel).normalize(t)


def convertible(signature: Signature, t: Term, u: Term, fuel: int = DEFAULT_FUEL) -> bool:
    return Reducer(signature, fuel).convertible(t, u)
