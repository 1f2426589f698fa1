"""
graph_view.py

Dependency graphs of reduced constraint problems as pyvis networks: one
node per size variable, coloured by connected component, and one edge
α -> β carrying p - q per inequality s^p α <= s^q β. Variables the solver
forced to ∞ sit apart as grey nodes; the mgs shows in node tooltips.
"""
from __future__ import annotations
from typing import Dict, Iterable, Optional

from pyvis.network import Network

from cacsa.sizes.algebra import show_size
from cacsa.solver.dependency_graph import DependencyGraph
from cacsa.solver.solve import SolveResult

_PALETTE = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#ff9da7"]
_INFTY_COLOR = "#9e9e9e"


def build_graph(
    graph: DependencyGraph,
    inf_vars: Iterable[str] = (),
    labels: Optional[Dict[str, str]] = None,
    physics: bool = True,
) -> Network:
    net = Network(height="600px", width="100%", directed=True, notebook=False)
    net.barnes_hut() if physics else net.hrepulsion()

    labels = labels or {}
    for i, comp in enumerate(graph.components()):
        color = _PALETTE[i % len(_PALETTE)]
        for var in comp:
            title = f"<b>{var}</b><br/>{labels.get(var, '')}"
            net.add_node(var, label=var, title=title, color=color)
    for var in sorted(set(inf_vars) - set(graph.vertices)):
        net.add_node(var, label=f"{var} = oo", title=f"<b>{var}</b><br/>forced to oo", color=_INFTY_COLOR)

    for src, dst, label in graph.edges():
        net.add_edge(src, dst, label=str(label), title=f"{src} -> {dst} ({label})")
    return net


def graph_of_result(result: SolveResult, physics: bool = True) -> Optional[Network]:
    """Network for the reduced linear part of a solved problem, None when unsatisfiable."""
    if result.reduced is None or result.mgs is None:
        return None
    labels = {v: f"mgs: {show_size(e)}" for v, e in result.mgs.items}
    return build_graph(DependencyGraph(result.reduced.linear), result.reduced.inf_vars, labels, physics)
