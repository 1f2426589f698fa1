# gui_app_streamlit.py – playground for the sized-type checker

from __future__ import annotations
import streamlit as st
from typing import Dict
import numpy as np
import streamlit.components.v1 as components

from cacsa.config import CheckerConfig
from cacsa.constraints.problem import show_atoms
from cacsa.driver import RunReport, run_source
from cacsa.eval_harness import random_linear_problem, time_solve
from cacsa.graphs.graph_view import graph_of_result
from cacsa.signatures.seed_signatures import CATALOG
from cacsa.solver.solve import dump_lines, solve

st.set_page_config(page_title="Sized Types Playground", layout="wide")
st.title("Sized Types Playground")
st.caption("Edit a signature, run its goals, and inspect the size constraints behind each answer.")

GOALS: Dict[str, str] = {
    "nat": "check 0 : nat^b .\n",
    "nat+minus": "annotate minus .\n",
    "nat+div": "annotate div .\n",
    "bool": "infer le 0 (s 0) .\n",
    "list": "annotate insert .\nannotate sort .\n",
}

# ---------------- Sidebar: Setup ----------------
st.sidebar.header("Setup")
seed = st.sidebar.selectbox("Start from", options=list(CATALOG.keys()), index=len(CATALOG) - 1)
fuel = st.sidebar.number_input("Fuel", min_value=1, max_value=10_000_000, value=100_000, step=1000)
trace = st.sidebar.checkbox("Trace inference", value=False)
physics = st.sidebar.checkbox("Graph physics", value=True)

if st.session_state.get("seed") != seed:
    st.session_state.seed = seed
    st.session_state.source = CATALOG[seed].strip() + "\n\n" + GOALS[seed]

TAB_SOURCE, TAB_CONSTRAINTS, TAB_GRAPH, TAB_SOLVER = st.tabs(["Source", "Constraints", "Graph", "Solver"])

with TAB_SOURCE:
    text = st.text_area("Source", key="source", height=420)
    if st.button("Run", type="primary"):
        config = CheckerConfig(fuel=int(fuel), trace=trace, dump_constraints=True)
        st.session_state.report = run_source(text, "<playground>", config)

    report: RunReport | None = st.session_state.get("report")
    if report is not None:
        (st.success if report.exit_code == 0 else st.error)(f"exit code {report.exit_code}")
        st.code("\n".join(report.output_lines(CheckerConfig(trace=trace))) or "(no goals)")
        for line in report.diagnostics:
            st.warning(line)

with TAB_CONSTRAINTS:
    report = st.session_state.get("report")
    if report is None:
        st.info("Run the source first.")
    else:
        for i, goal in enumerate(report.goals):
            with st.expander(f"{goal.kind} at {goal.location} ({goal.status})", expanded=i == 0):
                for dump in goal.dumps:
                    st.code("\n".join(dump))

with TAB_GRAPH:
    st.subheader("Dependency graph of the last solved problem")
    report = st.session_state.get("report")
    results = [r for g in (report.goals if report else []) for r in g.results]
    if not results:
        st.info("No solved constraint problems yet.")
    else:
        idx = st.selectbox("Problem", options=list(range(len(results))), index=len(results) - 1)
        net = graph_of_result(results[idx], physics=physics)
        if net is None:
            st.error("Unsatisfiable: no graph.")
        else:
            components.html(net.generate_html(notebook=False), height=620, scrolling=True)
            st.caption("Nodes are size variables coloured by component; grey nodes are forced to oo.")

with TAB_SOLVER:
    st.subheader("Random linear problems")
    col_a, col_b, col_c = st.columns(3)
    n_ineq = col_a.number_input("Inequalities", min_value=1, max_value=5000, value=50)
    n_vars = col_b.number_input("Variables", min_value=1, max_value=2000, value=20)
    rng_seed = col_c.number_input("Seed", min_value=0, value=0)
    if st.button("Solve random problem"):
        problem = random_linear_problem(int(n_ineq), int(n_vars), np.random.default_rng(int(rng_seed)))
        result = solve(problem)
        st.write(f"best of 3: {time_solve(problem) * 1000:.2f} ms")
        st.code("\n".join(show_atoms(problem)[:200]))
        st.code("\n".join(dump_lines(result)))
