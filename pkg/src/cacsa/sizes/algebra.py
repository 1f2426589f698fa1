"""
algebra.py

Size expressions of the form s^k(α) or s^k(∞), kept in run-length form, with
the quasi-ordering ≤A, A-normal forms (s∞ → ∞) and a fresh-variable supply.

Expressions built through `succ` are always A-normal. Raw shifts above ∞
(`raw_succ`) only appear inside the equality solver, where equalities are
compared before normalization.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Iterable, Optional, Set, Tuple

SizeVar = str


@dataclass(frozen=True)
class SizeExpr:
    """s^shift(base); a `None` base stands for ∞."""
    base: Optional[SizeVar]
    shift: int = 0

    def __post_init__(self) -> None:
        if self.shift < 0:
            raise ValueError(f"negative successor count: {self.shift}")

    @property
    def is_infinite(self) -> bool:
        return self.base is None

    @property
    def is_normal(self) -> bool:
        return self.base is not None or self.shift == 0

    def variables(self) -> Set[SizeVar]:
        return set() if self.base is None else {self.base}

    def sort_key(self) -> Tuple[int, str, int]:
        return (1 if self.base is None else 0, self.base or "", self.shift)

    def __str__(self) -> str:
        return show_size(self)


INFTY = SizeExpr(None, 0)


def size_var(name: SizeVar) -> SizeExpr:
    return SizeExpr(name, 0)


def succ(a: SizeExpr, k: int = 1) -> SizeExpr:
    """s^k a, A-normal."""
    if a.is_infinite:
        return INFTY
    return SizeExpr(a.base, a.shift + k)


def raw_succ(a: SizeExpr, k: int = 1) -> SizeExpr:
    """s^k a without absorbing the successors into ∞."""
    return SizeExpr(a.base, a.shift + k)


def normalize(a: SizeExpr) -> SizeExpr:
    """The →A-normal form a↓."""
    return INFTY if a.base is None else a


def size_leq(a: SizeExpr, b: SizeExpr) -> bool:
    """Decide a ≤A b."""
    a, b = normalize(a), normalize(b)
    if b.is_infinite:
        return True
    if a.is_infinite:
        return False
    return a.base == b.base and a.shift <= b.shift


def size_equiv(a: SizeExpr, b: SizeExpr) -> bool:
    """a ≃A b, i.e. equal normal forms."""
    return normalize(a) == normalize(b)


def symbol_count(a: SizeExpr) -> int:
    """Number of symbols (successors plus the base) in a."""
    return a.shift + 1


def show_size(a: SizeExpr) -> str:
    base = "oo" if a.base is None else a.base
    return " ".join(["s"] * a.shift + [base])


class FreshSupply:
    """Monotone generator of size variables avoiding a growing `used` set.

    The set is shared, not copied: a session and its solver calls draw from
    one supply so no name is ever emitted twice.
    """

    def __init__(self, prefix: str = "$", used: Optional[Set[SizeVar]] = None) -> None:
        self.prefix = prefix
        self.used: Set[SizeVar] = used if used is not None else set()
        self._counter = 0

    def reserve(self, names: Iterable[SizeVar]) -> None:
        self.used.update(names)

    def fresh(self) -> SizeVar:
        while True:
            self._counter += 1
            name = f"{self.prefix}{self._counter}"
            if name not in self.used:
                self.used.add(name)
                return name
