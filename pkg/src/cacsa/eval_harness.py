"""
eval_harness.py

Benchmarks and sweeps for the checker: random constraint problems for
solver timing, and a corpus sweep that runs every source file through the
driver and tallies exit codes.
"""
from __future__ import annotations
import time
from pathlib import Path
from typing import Dict, Iterable, Optional

import numpy as np

from cacsa.config import CheckerConfig
from cacsa.constraints.problem import ConstraintProblem
from cacsa.driver import EXIT_OK, run
from cacsa.sizes.algebra import INFTY, SizeExpr
from cacsa.solver.solve import solve


def random_linear_problem(
    n_inequalities: int, n_vars: int, rng: Optional[np.random.Generator] = None, max_shift: int = 3,
) -> ConstraintProblem:
    """Inequalities s^p a_j <= s^q a_k with no increasing cycle.

    A hidden potential h is drawn first and every atom is chosen so that
    p - q <= h(k) - h(j); h itself (shifted to be non-negative) then solves
    the problem linearly.
    """
    rng = rng or np.random.default_rng(0)
    names = [f"a{i}" for i in range(n_vars)]
    potential = rng.integers(0, max_shift + 1, size=n_vars)
    atoms = []
    for _ in range(n_inequalities):
        j, k = (int(x) for x in rng.integers(0, n_vars, size=2))
        slack = int(potential[k] - potential[j])
        p = int(rng.integers(0, max_shift + 1))
        q = max(0, p - slack) + int(rng.integers(0, 2))
        atoms.append((SizeExpr(names[j], p), SizeExpr(names[k], q)))
    return ConstraintProblem.make(inequalities=atoms)


def random_problem(
    rng: np.random.Generator, n_vars: int, n_atoms: int, max_shift: int = 2, eq_ratio: float = 0.3,
) -> ConstraintProblem:
    """Unrestricted random problem over a0..a{n-1} and oo."""
    names = [f"a{i}" for i in range(n_vars)]

    def size() -> SizeExpr:
        shift = int(rng.integers(0, max_shift + 1))
        if rng.random() < 0.15:
            return INFTY
        return SizeExpr(names[int(rng.integers(0, n_vars))], shift)

    eqs, ineqs = [], []
    for _ in range(n_atoms):
        (eqs if rng.random() < eq_ratio else ineqs).append((size(), size()))
    return ConstraintProblem.make(eqs, ineqs)


def time_solve(problem: ConstraintProblem, repeats: int = 3) -> float:
    """Best wall-clock time of `solve` over `repeats` runs, in seconds."""
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        solve(problem)
        best = min(best, time.perf_counter() - start)
    return best


def sweep_corpus(paths: Iterable[str | Path], config: Optional[CheckerConfig] = None) -> Dict[str, int]:
    """Check every file, print one line per file and a tally; returns exit codes by file name."""
    config = config or CheckerConfig()
    codes: Dict[str, int] = {}
    for path in sorted(Path(p) for p in paths):
        report = run(path, config)
        proved = sum(goal.status == "ok" for goal in report.goals)
        status = "ok" if report.exit_code == EXIT_OK else f"exit {report.exit_code}"
        print(f"{path.name:<24} {status:<7} goals {proved}/{len(report.goals)}")
        for line in report.diagnostics:
            print(f"    {line}")
        codes[path.name] = report.exit_code
    clean = sum(code == EXIT_OK for code in codes.values())
    print(f"{clean}/{len(codes)} files checked cleanly.")
    return codes
