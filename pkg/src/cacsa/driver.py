"""
driver.py

Runs a source file: load, validate the signature and rules, then process
assumptions and goals in order. Every failure becomes a diagnostic line
`FILE:LINE:COL: error[KIND]: message`; the exit code reflects the worst
class of failure (2 parse/validation, 3 fuel, 1 typing, 0 success).
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from cacsa.config import CheckerConfig
from cacsa.constraints.problem import show_atoms, show_problem
from cacsa.inference.annotations import annotate_symbol
from cacsa.inference.errors import ErrorKind, TypingError
from cacsa.inference.infer import check, check_annotated, check_sorted, infer, infer_annotated
from cacsa.inference.session import InferSession
from cacsa.inference.validation import validate_rules, validate_signature
from cacsa.sizes.substitution import show_subst
from cacsa.solver.solve import SolveResult, dump_lines
from cacsa.syntax.grammar import ParseError
from cacsa.syntax.loader import AnnotateGoal, AssumeDecl, CheckGoal, InferGoal, SourceFile, load_source
from cacsa.terms.printer import show_term
from cacsa.terms.signature import Env, SourceSpan
from cacsa.terms.term import size_vars

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_TYPING = 1
EXIT_INVALID = 2
EXIT_FUEL = 3


@dataclass
class GoalReport:
    kind: str
    location: SourceSpan
    status: str = "ok"
    lines: List[str] = field(default_factory=list)
    dumps: List[List[str]] = field(default_factory=list)
    trace: List[str] = field(default_factory=list)
    error_kind: Optional[str] = None
    # Solver results kept for graph rendering; not serialized.
    results: List[SolveResult] = field(default_factory=list, repr=False, compare=False)


@dataclass
class RunReport:
    path: str
    exit_code: int = EXIT_OK
    diagnostics: List[str] = field(default_factory=list)
    goals: List[GoalReport] = field(default_factory=list)

    def output_lines(self, config: CheckerConfig) -> List[str]:
        lines: List[str] = []
        for goal in self.goals:
            lines += goal.lines
            if config.dump_constraints:
                for dump in goal.dumps:
                    lines += ["```constraints", *dump, "```"]
            if config.trace and goal.trace:
                lines += ["trace:"] + [f"  {t}" for t in goal.trace]
        return lines


class _Run:
    def __init__(self, path: str, config: CheckerConfig) -> None:
        self.config = config
        self.report = RunReport(path)
        self.invalid = False
        self.out_of_fuel = False
        self.ill_typed = False

    def diagnose(self, location: Optional[SourceSpan], kind: str, message: str) -> str:
        where = f"{location.line}:{location.column}" if location else "1:1"
        line = f"{self.report.path}:{where}: error[{kind}]: {message}"
        self.report.diagnostics.append(line)
        logger.info(line)
        return line

    def typing_failure(self, goal: GoalReport, exc: TypingError) -> None:
        goal.status = "error"
        goal.error_kind = exc.kind.value
        self.diagnose(exc.location or goal.location, exc.kind.value, exc.message)
        goal.lines.append(f"{goal.kind} at {goal.location}: error[{exc.kind.value}]")
        if exc.residue is not None:
            goal.lines.append(f"  residue: {show_problem(exc.residue)}")
            goal.dumps.append(["residue:"] + [f"  {x}" for x in show_atoms(exc.residue)])
        if exc.kind is ErrorKind.FUEL_EXHAUSTED:
            self.out_of_fuel = True
        else:
            self.ill_typed = True

    def exit_code(self) -> int:
        if self.invalid:
            return EXIT_INVALID
        if self.out_of_fuel:
            return EXIT_FUEL
        if self.ill_typed:
            return EXIT_TYPING
        return EXIT_OK

    # ---------------- Goals ----------------
    def session(self, source: SourceFile) -> InferSession:
        return InferSession(source.signature, fuel=self.config.fuel, trace=self.config.trace)

    def infer_goal(self, source: SourceFile, env: Env, decl: InferGoal, goal: GoalReport) -> None:
        session = self.session(source)
        try:
            line = f"infer {show_term(decl.term)} : "
            if env.size_vars():
                ty, mgs = infer_annotated(source.signature, env, decl.term, session)
                line += f"{show_term(ty)} with {show_subst(mgs.restrict(env.size_vars()))}"
            else:
                line += show_term(infer(source.signature, env, decl.term, session))
            goal.lines.append(line)
        finally:
            self._collect(goal, session)

    def check_goal(self, source: SourceFile, env: Env, decl: CheckGoal, goal: GoalReport) -> None:
        session = self.session(source)
        try:
            check_fn = check_annotated if env.size_vars() else check
            psi = check_fn(source.signature, env, decl.term, decl.type, session)
            shown = show_subst(psi.restrict(size_vars(decl.type) | env.size_vars()))
            goal.lines.append(f"check {show_term(decl.term)} : {show_term(decl.type)} ok {shown}")
        finally:
            self._collect(goal, session)

    def annotate_goal(self, source: SourceFile, decl: AnnotateGoal, goal: GoalReport) -> None:
        result = annotate_symbol(source.signature, decl.name, self.config.fuel, self.config.trace)
        goal.lines.append(f"annotate {decl.name} (heuristic):")
        for report in result.reports:
            verdict = "accepted" if report.accepted else "rejected"
            goal.lines.append(f"  rule at {report.rule.span}: {verdict}; {report.relation()}")
            goal.results.append(report.result)
            goal.trace += list(report.trace)
        verdict = "accepted" if result.accepted else "rejected"
        goal.lines.append(f"  combined: {verdict}; {result.relation()}")
        goal.results.append(result.combined)
        goal.dumps += [dump_lines(r) for r in goal.results]
        if not result.accepted:
            raise TypingError(
                ErrorKind.ANNOTATION_REJECTED,
                f"size annotations of '{decl.name}' are not validated by its rules")

    def _collect(self, goal: GoalReport, session: InferSession) -> None:
        goal.results += session.solve_log
        goal.dumps += [dump_lines(r) for r in session.solve_log]
        goal.trace += session.trace_lines

    # ---------------- Whole file ----------------
    def run(self, text: str) -> RunReport:
        try:
            source = load_source(text, self.report.path)
        except ParseError as exc:
            self.invalid = True
            self.diagnose(SourceSpan(exc.line, exc.column), "ParseError", exc.message)
            self.report.exit_code = self.exit_code()
            return self.report

        try:
            errors = validate_signature(source.signature, self.config.fuel)
        except TypingError as exc:
            self.out_of_fuel = True
            self.diagnose(exc.location, exc.kind.value, exc.message)
            errors = None
        for err in (errors or []) + validate_rules(source.signature):
            self.invalid = True
            self.diagnose(err.location, err.kind.value, err.message)
        if errors is None:
            # sorts of the remaining symbols are unknown
            self.report.exit_code = self.exit_code()
            return self.report

        env = Env()
        for decl in source.declarations:
            if isinstance(decl, AssumeDecl):
                try:
                    sort = check_sorted(source.signature, env, decl.type, self.session(source))
                    env = env.extend(decl.name, decl.type, sort)
                except TypingError as exc:
                    if exc.kind is ErrorKind.FUEL_EXHAUSTED:
                        self.out_of_fuel = True
                        self.diagnose(decl.span, exc.kind.value, f"assumption '{decl.name}': {exc.message}")
                    else:
                        self.invalid = True
                        self.diagnose(decl.span, ErrorKind.INVALID_DECLARATION.value, f"assumption '{decl.name}': {exc.message}")
                continue
            if not isinstance(decl, (InferGoal, CheckGoal, AnnotateGoal)):
                continue
            kind = {InferGoal: "infer", CheckGoal: "check", AnnotateGoal: "annotate"}[type(decl)]
            goal = GoalReport(kind, decl.span)
            self.report.goals.append(goal)
            try:
                if isinstance(decl, InferGoal):
                    self.infer_goal(source, env, decl, goal)
                elif isinstance(decl, CheckGoal):
                    self.check_goal(source, env, decl, goal)
                else:
                    self.annotate_goal(source, decl, goal)
            except TypingError as exc:
                self.typing_failure(goal, exc)
        self.report.exit_code = self.exit_code()
        logger.info("%s: exit %d", self.report.path, self.report.exit_code)
        return self.report


def run_source(text: str, path: str = "<string>", config: Optional[CheckerConfig] = None) -> RunReport:
    return _Run(path, config or CheckerConfig()).run(text)


def run(path: str | Path, config: Optional[CheckerConfig] = None) -> RunReport:
    config = config or CheckerConfig()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        report = RunReport(str(path), EXIT_INVALID)
        report.diagnostics.append(f"{path}:1:1: error[IOError]: {exc.strerror or exc}")
        return report
    return run_source(text, str(path), config)
