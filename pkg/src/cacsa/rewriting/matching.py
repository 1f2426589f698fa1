"""
matching.py

Syntactic matching of algebraic left-hand sides. Annotations on constant
predicate symbols are ignored, so a match survives any size substitution
applied to the subject.
"""
from __future__ import annotations
from typing import Dict, Optional

from cacsa.terms.term import App, ConstPred, Sort, Symb, Term, Var, alpha_eq

Match = Dict[str, Term]


def _match(pattern: Term, subject: Term, sigma: Match) -> bool:
    if isinstance(pattern, Var):
        bound = sigma.get(pattern.name)
        if bound is None:
            sigma[pattern.name] = subject
            return True
        # non-linear pattern: repeated variables must see the same subterm
        return alpha_eq(bound, subject)
    if isinstance(pattern, ConstPred):
        return isinstance(subject, ConstPred) and subject.name == pattern.name
    if isinstance(pattern, (Symb, Sort)):
        return pattern == subject
    if isinstance(pattern, App):
        return (isinstance(subject, App)
                and _match(pattern.fun, subject.fun, sigma)
                and _match(pattern.arg, subject.arg, sigma))
    return False


def match_pattern(pattern: Term, subject: Term) -> Optional[Match]:
    """σ with σ(pattern) equal to subject up to annotations, or None."""
    sigma: Match = {}
    return sigma if _match(pattern, subject, sigma) else None
