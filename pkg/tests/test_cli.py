import csv
import io
import json

import pytest

from centerbook.cli import EXIT_BUDGET, EXIT_DOCUMENT, EXIT_INVARIANT, build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parser_rejects_missing_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_parser_rejects_unknown_figure():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["reproduce", "--figure", "5"])


def test_parser_defaults():
    args = build_parser().parse_args(
        ["simulate", "wbg.json", "book.json", "--agent", "halfer+edt"]
    )
    assert args.command == "simulate"
    assert args.rho == "1"
    assert args.linkage == "alike"
    assert args.tie == "reject"
    assert args.format == "plain"
    assert not args.decimal
    assert not args.allow_illegitimate


def test_credence_subcommand(capsys):
    code, out, _ = run(
        capsys, "credence", "builtin:wbg", "--rule", "thirder", "--obs", "white"
    )
    assert code == 0
    assert "WG/monday (beauty)" in out
    assert out.count("1/3") == 6


def test_evaluate_subcommand(capsys):
    code, out, _ = run(
        capsys, "evaluate", "builtin:wbg", "builtin:wbg-book", "--agent", "thirder+cdt"
    )
    assert code == 0
    lines = out.splitlines()
    assert any("bet1" in line and "accept" in line for line in lines)
    assert any("bet2" in line and "-2" in line and "reject" in line for line in lines)


def test_simulate_subcommand_verdict(capsys):
    code, out, _ = run(
        capsys, "simulate", "builtin:wbg", "builtin:wbg-book", "--agent", "halfer+edt"
    )
    assert code == 0
    assert "dutch book: yes" in out
    assert "worst world total: -2" in out


def test_simulate_same_info_linkage_escapes(capsys):
    code, out, _ = run(
        capsys,
        "simulate",
        "builtin:wbg",
        "builtin:wbg-book",
        "--agent",
        "halfer+edt",
        "--linkage",
        "same-info",
    )
    assert code == 0
    assert "dutch book: no" in out


def test_simulate_illegitimate_book_exit_code(capsys):
    code, out, err = run(
        capsys,
        "simulate",
        "builtin:original-sb",
        "builtin:anti-thirder",
        "--agent",
        "thirder+cdt",
        "--tie",
        "accept",
    )
    assert code == EXIT_INVARIANT
    assert "error:" in err and "monday" in err and "tuesday" in err


def test_simulate_illegitimate_book_with_override(capsys):
    code, out, _ = run(
        capsys,
        "simulate",
        "builtin:original-sb",
        "builtin:anti-thirder",
        "--agent",
        "thirder+cdt",
        "--tie",
        "accept",
        "--allow-illegitimate",
    )
    assert code == 0
    assert "dutch book: yes" in out


def test_reproduce_every_figure_runs(capsys):
    for figure in (1, 2, 3, 4, 6, 7):
        code, out, _ = run(capsys, "reproduce", "--figure", str(figure))
        assert code == 0
        assert out.strip()


def test_reproduce_figure_2_table(capsys):
    _, out, _ = run(capsys, "reproduce", "--figure", "2")
    lines = {line.split()[0]: line for line in out.splitlines() if line.strip()}
    assert "bet1: -15" in lines["pre"] and "bet1: 15" in lines["pre"]
    assert "bet2: 10" in lines["monday"] and "bet2: -10" in lines["monday"]
    assert "bet2: -10" in lines["tuesday"]
    assert lines["total"].split() == ["total", "-5", "-5"]


def test_reproduce_figure_4_table(capsys):
    _, out, _ = run(capsys, "reproduce", "--figure", "4")
    lines = {line.split()[0]: line for line in out.splitlines() if line.strip()}
    assert lines["total"].split() == ["total", "-2", "-2", "-2", "-2"]
    assert "bet1: 22" in lines["pre"] and "bet1: -20" in lines["pre"]
    assert "bet2: -24" in lines["monday"] and "bet2: 9" in lines["monday"]
    assert "bet2: 9" in lines["tuesday"] and "bet2: -24" not in lines["tuesday"]


def test_reproduce_is_byte_stable(capsys):
    _, first, _ = run(capsys, "reproduce", "--figure", "4")
    _, second, _ = run(capsys, "reproduce", "--figure", "4")
    assert first == second


def test_reproduce_matches_simulate_on_bundled_documents(capsys):
    _, reproduced, _ = run(capsys, "reproduce", "--figure", "4")
    _, simulated, _ = run(
        capsys, "simulate", "builtin:wbg", "builtin:wbg-book", "--agent", "halfer+edt"
    )
    assert reproduced == simulated
    _, reproduced2, _ = run(capsys, "reproduce", "--figure", "2")
    _, simulated2, _ = run(
        capsys,
        "simulate",
        "builtin:original-sb",
        "builtin:hitchcock",
        "--agent",
        "halfer+cdt",
        "--tie",
        "accept",
    )
    assert reproduced2 == simulated2
    _, reproduced7, _ = run(capsys, "reproduce", "--figure", "7")
    _, simulated7, _ = run(
        capsys,
        "simulate",
        "builtin:two-beauties",
        "builtin:two-beauties-book",
        "--agent",
        "halfer+edt",
    )
    assert reproduced7 == simulated7


def test_csv_format_parses(capsys):
    _, out, _ = run(capsys, "reproduce", "--figure", "4", "--format", "csv")
    table_text = out.split("all offers accepted")[0]
    rows = list(csv.reader(io.StringIO(table_text)))
    assert rows[0][1:] == ["WG (1/4)", "WO (1/4)", "BO (1/4)", "BG (1/4)"]
    assert rows[-1] == ["total", "-2", "-2", "-2", "-2"]


def test_decimal_display(capsys):
    _, out, _ = run(capsys, "reproduce", "--figure", "4", "--decimal")
    assert "0.25" in out


def test_synthesize_subcommand(capsys):
    code, out, _ = run(
        capsys,
        "synthesize",
        "builtin:wbg",
        "builtin:wbg-template",
        "--agent",
        "halfer+edt",
    )
    assert code == 0
    assert "outcome: feasible" in out
    assert "accept bet2 at (white, beauty)" in out
    assert "dutch book: yes" in out


def test_synthesize_infeasible(capsys):
    code, out, _ = run(
        capsys,
        "synthesize",
        "builtin:wbg",
        "builtin:wbg-template",
        "--agent",
        "thirder+cdt",
    )
    assert code == 0
    assert "outcome: infeasible_lp" in out
    assert "accept-all" in out


def test_synthesize_grid_mode(capsys):
    code, out, _ = run(
        capsys,
        "synthesize",
        "builtin:wbg",
        "builtin:wbg-template",
        "--agent",
        "thirder+cdt",
        "--grid-step",
        "1",
        "--bounds",
        "0/20",
    )
    assert code == 0
    assert "outcome: infeasible_over_grid" in out
    assert "194481 point(s)" in out


def test_grid_budget_exit_code(capsys):
    code, _, err = run(
        capsys,
        "synthesize",
        "builtin:wbg",
        "builtin:wbg-template",
        "--agent",
        "halfer+edt",
        "--grid-step",
        "1",
        "--max-grid-points",
        "10",
    )
    assert code == EXIT_BUDGET
    assert "budget" in err


def test_document_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, _, err = run(
        capsys, "credence", str(bad), "--rule", "thirder", "--obs", "white"
    )
    assert code == EXIT_DOCUMENT
    assert "error:" in err


def test_invariant_error_exit_code(tmp_path, capsys):
    doc = {
        "worlds": [{"id": "a", "prior": "1/2"}, {"id": "b", "prior": "1/4"}],
        "slots": ["s"],
        "centers": [{"world": "a", "slot": "s", "observation": "o"}],
    }
    path = tmp_path / "bad_priors.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run(capsys, "credence", str(path), "--rule", "thirder", "--obs", "o")
    assert code == EXIT_INVARIANT
    assert "priors sum to 3/4" in err


def test_bad_agent_spec_is_a_document_error(capsys):
    code, _, err = run(
        capsys,
        "simulate",
        "builtin:wbg",
        "builtin:wbg-book",
        "--agent",
        "frequentist+cdt",
    )
    assert code == EXIT_DOCUMENT
    assert "agent spec" in err


def test_agent_spec_order_insensitive(capsys):
    _, first, _ = run(
        capsys, "simulate", "builtin:wbg", "builtin:wbg-book", "--agent", "cdt+thirder"
    )
    _, second, _ = run(
        capsys, "simulate", "builtin:wbg", "builtin:wbg-book", "--agent", "thirder+cdt"
    )
    assert first == second


def test_simulate_file_paths(tmp_path, capsys):
    from centerbook.bundled import bundled_document

    scenario = tmp_path / "wbg.json"
    scenario.write_text(json.dumps(bundled_document("wbg")), encoding="utf-8")
    book = tmp_path / "book.json"
    book.write_text(json.dumps(bundled_document("wbg-book")), encoding="utf-8")
    code, out, _ = run(
        capsys, "simulate", str(scenario), str(book), "--agent", "halfer+edt"
    )
    assert code == 0
    assert "dutch book: yes" in out
