"""
seed_signatures.py

Ready-made signatures for natural numbers, booleans and lists, written as
source snippets and loaded through the regular parser.
"""
from __future__ import annotations
from typing import Dict

from cacsa.syntax.loader import SourceFile, load_source

NAT = """
data nat : Type .
symbol 0 : nat^(s a) .
symbol s : nat^a -> nat^(s a) .
"""

MINUS = """
symbol minus : nat^a -> nat^b -> nat^a .
rule minus 0 x --> 0 .
rule minus x 0 --> x .
rule minus (s x) (s y) --> minus x y .
"""

DIV = """
symbol div : nat^a -> nat^b -> nat^a .
rule div 0 y --> 0 .
rule div (s x) y --> s (div (minus x y) y) .
"""

BOOL = """
data bool : Type .
symbol true : bool .
symbol false : bool .
symbol ite : bool -> (A:Type) A -> A -> A .
rule ite true A u v --> u .
rule ite false A u v --> v .
symbol le : nat -> nat -> bool .
rule le 0 y --> true .
rule le (s x) 0 --> false .
rule le (s x) (s y) --> le x y .
"""

LIST = """
data list : Type -> nat -> Type .
symbol nil : (A:Type) list^a A 0 .
symbol cons : (A:Type) A -> (n:nat) list^a A n -> list^(s a) A (s n) .
symbol insert : (A:Type) (cmp:A -> A -> bool) A -> (n:nat) list^a A n -> list^(s a) A (s n) .
rule insert A cmp x _ (nil _) --> cons A x 0 (nil A) .
rule insert A cmp x _ (cons _ y n l) -->
  ite (cmp x y) (list A (s (s n)))
      (cons A x (s n) (cons A y n l))
      (cons A y (s n) (insert A cmp x n l)) .
symbol sort : (A:Type) (cmp:A -> A -> bool) (n:nat) list^a A n -> list^a A n .
rule sort A cmp _ (nil _) --> nil A .
rule sort A cmp _ (cons _ x n l) --> insert A cmp x n (sort A cmp n l) .
"""

CATALOG: Dict[str, str] = {
    "nat": NAT,
    "nat+minus": NAT + MINUS,
    "nat+div": NAT + MINUS + DIV,
    "bool": NAT + BOOL,
    "list": NAT + BOOL + LIST,
}


def load_seed(name: str) -> SourceFile:
    """Fresh SourceFile for one catalog entry."""
    return load_source(CATALOG[name], f"<seed:{name}>")


def list_catalog() -> Dict[str, SourceFile]:
    return {name: load_seed(name) for name in CATALOG}
