"""
persistence.py

Save/load run reports as JSON. Solver results attached to goals are not
written; a loaded report carries the text output, dumps and diagnostics.
"""
from __future__ import annotations
import json
from pathlib import Path
from typing import Any, Dict, Union

from cacsa.driver import GoalReport, RunReport
from cacsa.terms.signature import SourceSpan


# ---------------- Report <-> dict ----------------

def report_to_dict(report: RunReport) -> Dict[str, Any]:
    return {
        "path": report.path,
        "exit_code": report.exit_code,
        "diagnostics": list(report.diagnostics),
        "goals": [
            {
                "kind": g.kind,
                "line": g.location.line,
                "column": g.location.column,
                "status": g.status,
                "error_kind": g.error_kind,
                "lines": list(g.lines),
                "dumps": [list(d) for d in g.dumps],
                "trace": list(g.trace),
            }
            for g in report.goals
        ],
    }


def report_from_dict(data: Dict[str, Any]) -> RunReport:
    goals = [
        GoalReport(
            kind=g["kind"],
            location=SourceSpan(g["line"], g["column"]),
            status=g.get("status", "ok"),
            lines=list(g.get("lines", [])),
            dumps=[list(d) for d in g.get("dumps", [])],
            trace=list(g.get("trace", [])),
            error_kind=g.get("error_kind"),
        )
        for g in data.get("goals", [])
    ]
    return RunReport(data["path"], data.get("exit_code", 0), list(data.get("diagnostics", [])), goals)


# ---------------- Files ----------------

def save_report(report: RunReport, path: Union[str, Path]) -> None:
    """Write a run report to disk as JSON."""
    with open(path, "w", encoding="utf-8") as f:
        json.dump(report_to_dict(report), f, ensure_ascii=False, indent=2)


def load_report(path: Union[str, Path]) -> RunReport:
    with open(path, "r", encoding="utf-8") as f:
        return report_from_dict(json.load(f))
