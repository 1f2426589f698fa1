"""
dependency_graph.py

Dependency graph of linear inequalities: vertex per size variable, an edge
α -> β labelled p - q for each s^p α ≤ s^q β (only the largest label per
vertex pair is kept). A cycle of positive total label is "increasing" and
forces its variables to ∞.

Cycle search and path costs run Bellman-Ford on negated labels from a
virtual source joined to every vertex with weight 0.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from cacsa.constraints.problem import Atom
from cacsa.sizes.algebra import SizeVar

logger = logging.getLogger(__name__)

_SOURCE = ("source",)


@dataclass(frozen=True)
class IncreasingCycle:
    vertices: Tuple[SizeVar, ...]
    constraints: Tuple[Atom, ...]
    cost: int


class DependencyGraph:
    def __init__(self, inequalities: Iterable[Atom]) -> None:
        self.graph = nx.DiGraph()
        for a, b in inequalities:
            if a.base is None or b.base is None:
                raise ValueError(f"not a linear inequality: {a} <= {b}")
            self.graph.add_node(a.base)
            self.graph.add_node(b.base)
            label = a.shift - b.shift
            current = self.graph.get_edge_data(a.base, b.base)
            if current is None or label > current["label"]:
                self.graph.add_edge(a.base, b.base, label=label, constraint=(a, b))

    @property
    def vertices(self) -> List[SizeVar]:
        return sorted(self.graph.nodes)

    def edges(self) -> List[Tuple[SizeVar, SizeVar, int]]:
        return sorted((u, v, d["label"]) for u, v, d in self.graph.edges(data=True))

    def _weighted(self) -> nx.DiGraph:
        h = nx.DiGraph()
        h.add_node(_SOURCE)
        for n in self.graph.nodes:
            h.add_edge(_SOURCE, n, weight=0)
        for u, v, d in self.graph.edges(data=True):
            if u != v:
                h.add_edge(u, v, weight=-d["label"])
        return h

    # ---------------- Queries ----------------
    def find_increasing_cycle(self) -> Optional[IncreasingCycle]:
        for u in sorted(n for n in self.graph.nodes if self.graph.has_edge(n, n)):
            d = self.graph.edges[u, u]
            if d["label"] > 0:
                return IncreasingCycle((u,), (d["constraint"],), d["label"])
        if self.graph.number_of_nodes() == 0:
            return None
        try:
            walk = nx.find_negative_cycle(self._weighted(), _SOURCE, weight="weight")
        except nx.NetworkXError:
            return None
        pairs = list(zip(walk, walk[1:]))
        constraints = tuple(self.graph.edges[u, v]["constraint"] for u, v in pairs)
        cost = sum(self.graph.edges[u, v]["label"] for u, v in pairs)
        logger.debug("increasing cycle %s (cost %d)", walk, cost)
        return IncreasingCycle(tuple(dict.fromkeys(walk[:-1])), constraints, cost)

    def longest_path_costs(self) -> Dict[SizeVar, int]:
        """max(0, largest path cost ending at each vertex); needs no increasing cycle."""
        dist = nx.single_source_bellman_ford_path_length(self._weighted(), _SOURCE, weight="weight")
        return {n: -int(dist[n]) for n in self.graph.nodes}

    def components(self) -> List[List[SizeVar]]:
        comps = [sorted(c) for c in nx.weakly_connected_components(self.graph)]
        return sorted(comps, key=lambda c: c[0])
