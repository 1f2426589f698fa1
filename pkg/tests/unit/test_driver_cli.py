from cacsa.cli import main
from cacsa.config import CheckerConfig
from cacsa.driver import EXIT_FUEL, EXIT_INVALID, EXIT_OK, EXIT_TYPING, run, run_source
from cacsa.persistence import load_report
from cacsa.signatures.seed_signatures import NAT

DIVERGING = NAT + """
symbol F : Type .
rule F --> F .
symbol f : F -> F .
assume x : F .
infer f x .
"""


def all_lines(report):
    return [line for goal in report.goals for line in goal.lines]


def test_corpus_files_check(corpus_dir):
    for name in ("insertion_sort", "minus_annotate", "div_sizes"):
        report = run(corpus_dir / f"{name}.cacsa")
        assert report.exit_code == EXIT_OK, report.diagnostics
        assert not report.diagnostics


def test_annotation_report_lines(corpus_dir):
    lines = all_lines(run(corpus_dir / "minus_annotate.cacsa"))
    assert lines[0] == "annotate minus (heuristic):"
    assert sum(line.startswith("  rule at ") for line in lines) == 3
    assert lines[-1] == "  combined: accepted; X = a"


def test_annotated_environment_goals(corpus_dir):
    lines = all_lines(run(corpus_dir / "div_sizes.cacsa"))
    assert "check s x : nat^c ok {c := oo}" in lines
    infer_lines = [line for line in lines if line.startswith("infer s x : ")]
    assert len(infer_lines) == 1 and " with {c := " in infer_lines[0]


def test_insertion_sort_goals(corpus_dir):
    lines = all_lines(run(corpus_dir / "insertion_sort.cacsa"))
    checks = [line for line in lines if line.startswith("check ")]
    assert len(checks) == 2
    assert all(" ok {" in line for line in checks)
    assert "  combined: accepted" in "\n".join(lines)


def test_rejected_annotation(corpus_dir):
    report = run(corpus_dir / "rejected.cacsa")
    assert report.exit_code == EXIT_TYPING
    assert "error[AnnotationRejected]" in report.diagnostics[0]
    assert report.goals[0].error_kind == "AnnotationRejected"


def test_typing_error_keeps_going():
    report = run_source(NAT + "check Type : Type .\ninfer s 0 .", path="goals.cacsa")
    assert report.exit_code == EXIT_TYPING
    assert report.diagnostics[0].startswith("goals.cacsa:5:")
    assert "error[UnsatConstraints]" in report.diagnostics[0]
    first, second = report.goals
    assert first.status == "error"
    assert first.lines[1] == "  residue: bottom"
    assert second.status == "ok"


def test_invalid_sources():
    report = run_source("data nat :")
    assert report.exit_code == EXIT_INVALID
    assert "error[ParseError]" in report.diagnostics[0]

    report = run_source(NAT + "symbol f : nat .\nrule f --> g .")
    assert report.exit_code == EXIT_INVALID
    assert "error[IllFormedRule]" in report.diagnostics[0]


def test_invalid_beats_typing_errors():
    report = run_source(NAT + "symbol g : Type Type .\ncheck Type : Type .")
    assert report.exit_code == EXIT_INVALID
    assert len(report.diagnostics) == 2


def test_missing_file(tmp_path):
    report = run(tmp_path / "missing.cacsa")
    assert report.exit_code == EXIT_INVALID
    assert "error[IOError]" in report.diagnostics[0]


def test_fuel_exhaustion_exit_code():
    report = run_source(DIVERGING, config=CheckerConfig(fuel=20))
    assert report.exit_code == EXIT_FUEL
    assert report.goals[0].error_kind == "FuelExhausted"


def test_fuel_exhaustion_while_validating():
    source = NAT + "symbol G : Type .\nrule G --> G .\nsymbol k : G .\nsymbol m : k 0 .\ninfer 0 ."
    report = run_source(source, path="decl.cacsa", config=CheckerConfig(fuel=20))
    assert report.exit_code == EXIT_FUEL
    assert report.diagnostics[0].startswith("decl.cacsa:8:")
    assert "error[FuelExhausted]" in report.diagnostics[0]
    assert not report.goals


def test_dump_and_trace_output():
    config = CheckerConfig(dump_constraints=True, trace=True)
    report = run_source(NAT + "infer s 0 .", config=config)
    lines = report.output_lines(config)
    assert lines[0].startswith("infer s 0 : nat^(s s $")
    assert "```constraints" in lines
    assert "trace:" in lines
    assert any("(app)" in line for line in lines)
    assert report.output_lines(CheckerConfig()) == lines[:1]


# ---------------- Command line ----------------

def test_cli_writes_json_report(corpus_dir, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main([str(corpus_dir / "minus_annotate.cacsa"), "--json", str(out)])
    assert code == EXIT_OK
    assert "combined: accepted; X = a" in capsys.readouterr().out
    report = load_report(out)
    assert report.exit_code == EXIT_OK
    assert report.goals[0].kind == "annotate"


def test_cli_reports_diagnostics_on_stderr(corpus_dir, capsys):
    code = main([str(corpus_dir / "rejected.cacsa"), "--dump-constraints"])
    assert code == EXIT_TYPING
    captured = capsys.readouterr()
    assert "error[AnnotationRejected]" in captured.err
    assert "```constraints" in captured.out


def test_cli_rejects_bad_options(corpus_dir, capsys):
    assert main([str(corpus_dir / "rejected.cacsa"), "--fuel", "0"]) == EXIT_INVALID
    assert "invalid options" in capsys.readouterr().err
