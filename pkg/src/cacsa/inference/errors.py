"""
errors.py

Typing diagnostics raised by inference, checking and validation.
"""
from __future__ import annotations
from enum import Enum
from typing import Optional

from cacsa.constraints.problem import ConstraintProblem
from cacsa.terms.signature import SourceSpan


class ErrorKind(Enum):
    NOT_A_PRODUCT = "NotAProduct"
    UNSAT_CONSTRAINTS = "UnsatConstraints"
    UNBOUND_VARIABLE = "UnboundVariable"
    ILL_SORTED_BINDER = "IllSortedBinder"
    BOX_HAS_NO_TYPE = "BoxHasNoType"
    FUEL_EXHAUSTED = "FuelExhausted"
    SORT_MISMATCH = "SortMismatch"
    ILL_FORMED_RULE = "IllFormedRule"
    INVALID_DECLARATION = "InvalidDeclaration"
    ANNOTATION_REJECTED = "AnnotationRejected"


class TypingError(Exception):
    def __init__(
        self,
        kind: ErrorKind,
        message: str,
        location: Optional[SourceSpan] = None,
        residue: Optional[ConstraintProblem] = None,
    ) -> None:
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.location = location
        self.residue = residue

    def at(self, location: Optional[SourceSpan]) -> "TypingError":
        """Attach a location unless one is already known."""
        if self.location is None:
            self.location = location
        return self

    def __str__(self) -> str:
        return f"error[{self.kind.value}]: {self.message}"
