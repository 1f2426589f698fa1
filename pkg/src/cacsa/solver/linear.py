"""
linear.py

Linear solutions of reduced inequality conjunctions. A linear solution maps
α_i to s^(z_i) β_(c_i), with one base β_c per connected component of the
dependency graph; it is described by the exponent vector z, which must
satisfy z_j - z_k ≤ q - p for every s^p α_j ≤ s^q α_k and z ≥ 0.

The least such vector is the vector of longest path costs in the dependency
graph (clamped at 0).
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from cacsa.constraints.problem import Atom
from cacsa.sizes.algebra import FreshSupply, SizeExpr, SizeVar
from cacsa.sizes.substitution import SizeSubst
from cacsa.solver.dependency_graph import DependencyGraph


@dataclass(eq=False)
class SolutionVector:
    variables: Tuple[SizeVar, ...]
    z: np.ndarray
    component: Tuple[int, ...]

    def exponent(self, var: SizeVar) -> int:
        return int(self.z[self.variables.index(var)])


def difference_matrix(inequalities: Sequence[Atom], variables: Sequence[SizeVar]) -> Tuple[np.ndarray, np.ndarray]:
    """M, v with one row z_j - z_k ≤ q - p per inequality s^p α_j ≤ s^q α_k."""
    index = {v: i for i, v in enumerate(variables)}
    m = np.zeros((len(inequalities), len(variables)), dtype=int)
    v = np.zeros(len(inequalities), dtype=int)
    for r, (a, b) in enumerate(inequalities):
        m[r, index[a.base]] += 1
        m[r, index[b.base]] -= 1
        v[r] = b.shift - a.shift
    return m, v


def is_feasible(inequalities: Sequence[Atom], vector: SolutionVector) -> bool:
    m, v = difference_matrix(inequalities, vector.variables)
    return bool(np.all(vector.z >= 0) and np.all(m @ vector.z <= v))


def minimal_vector(inequalities: Sequence[Atom]) -> SolutionVector:
    """Pointwise-least feasible vector; requires no increasing cycle."""
    graph = DependencyGraph(inequalities)
    costs = graph.longest_path_costs()
    variables = tuple(graph.vertices)
    comp_of: Dict[SizeVar, int] = {}
    for i, comp in enumerate(graph.components()):
        for var in comp:
            comp_of[var] = i
    z = np.array([costs[v] for v in variables], dtype=int)
    return SolutionVector(variables, z, tuple(comp_of[v] for v in variables))


def vector_to_subst(vector: SolutionVector, supply: FreshSupply) -> SizeSubst:
    """α_i ↦ s^(z_i) β_(c_i) with fresh bases drawn from `supply`."""
    bases: Dict[int, SizeVar] = {}
    for c in sorted(set(vector.component)):
        bases[c] = supply.fresh()
    return SizeSubst.of({
        var: SizeExpr(bases[c], int(k))
        for var, k, c in zip(vector.variables, vector.z, vector.component)
    })


def from_subst(phi: SizeSubst, variables: Sequence[SizeVar]) -> np.ndarray:
    """The exponent vector of a linear solution."""
    exps: List[int] = []
    for var in variables:
        img = phi.apply(SizeExpr(var, 0))
        if img.is_infinite:
            raise ValueError(f"{var} is mapped to oo; not a linear solution")
        exps.append(img.shift)
    return np.array(exps, dtype=int)


def minimal_linear_solution(inequalities: Sequence[Atom], supply: Optional[FreshSupply] = None) -> SizeSubst:
    if supply is None:
        used = set()
        for a, b in inequalities:
            used |= a.variables() | b.variables()
        supply = FreshSupply(used=used)
    if not inequalities:
        return SizeSubst()
    return vector_to_subst(minimal_vector(inequalities), supply)
