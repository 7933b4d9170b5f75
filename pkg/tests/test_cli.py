import io
import subprocess
import sys
from pathlib import Path

import pytest

from colombeau.cli import run

DATA = Path(__file__).parent / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_compare_example():
    assert call("compare", "e^(2)", "e^(1)") == (0, "leq\n", "")


def test_valuation_zero():
    assert call("valuation", "0")[:2] == (0, "inf\n")


def test_axiom_suite_example():
    code, out, _ = call("axiom-suite", "--basis", "B", "--samples", "50", "--seed", "7")
    assert code == 0
    assert out.splitlines()[-1] == "0 failures 0 unknowns"
    assert out.splitlines()[0] == "GA'_I B 50 0 0 7"


def test_membership_exit_codes():
    assert call("member", "e^(3)", "2")[:2] == (0, "member\n")
    assert call("member", "2*e^(2)", "2")[:2] == (1, "not-member\n")
    assert call("member", "x*e^(2)", "2", "0", "1", "--domain", "-2", "2")[0] == 1
    assert call("member", "x*e^(2)", "2", "1", "1", "--domain", "-2", "2")[0] == 1
    assert call("member", "x*e^(3)", "2", "1", "1", "--domain", "-2", "2")[0] == 0


def test_positivity_exit_codes():
    assert call("positive", "e^(2)")[:2] == (0, "positive\n")
    assert call("positive", "-e^(1) + e^(2)")[0] == 1


def test_sampled_member_is_consistent_only():
    code, out, _ = call("member", "e^(3)*exp(-e^(-1))", "2")
    assert code == 2 and out.startswith("consistent")


def test_falsify_preset():
    code, out, _ = call("falsify", "--preset", "oscillating")
    assert code == 1
    lines = out.splitlines()
    assert [ln.split()[:2] for ln in lines] == [["geq0", "falsified"], ["leq0", "falsified"]]
    assert all(ln.endswith("verified") for ln in lines)


def test_compare_sampled_incomparable():
    code, out, _ = call("compare", "e^(1)*i^(1)*sin(e^(-1)*i^(-1))", "0", "--iota", "3/2*pi^-1")
    assert out.splitlines()[0] == "incomparable"


def test_leading_minus_is_an_expression():
    assert call("abs", "-2*e^(3)")[:2] == (0, "2*e^(3)\n")
    assert call("valuation", "-1/2")[:2] == (0, "0\n")


def test_tsv_format():
    code, out, _ = call("norm", "e^(3)", "--format", "tsv")
    assert code == 0
    head, row = out.splitlines()
    assert head == "norm\tfloat"
    assert row.split("\t")[0] == "exp(-3)"


def test_global_options_before_command():
    _, out, _ = call("--seed", "11", "axiom-suite", "--basis", "B_s", "--axiom", "GA'_II", "--samples", "3")
    assert out.splitlines()[0] == "GA'_II B_s 3 0 0 11"


@pytest.mark.parametrize("argv", [
    ("valuation", "e^(1"),
    ("frobnicate",),
    ("root", "e^(2)", "two"),
    ("member", "e^(1)", "1/0"),
    ("converge", "e^(1)", "0"),
    ("falsify",),
    ("integrate", "x*e^(1)", "0", "1", "--domain", "0", "1"),
    ("compare", "e^(1)*i^(1)", "e^(1)"),
])
def test_usage_errors_exit_3(argv):
    code, out, err = call(*argv)
    assert code == 3 and err


def test_script_replay_is_golden(tmp_path):
    code, out, _ = call("script", str(DATA / "session.txt"), "--seed", "7")
    assert out == (DATA / "session.golden").read_text(encoding="utf-8")
    assert code == 3  # the session ends with a deliberate syntax error


def test_script_replay_in_subprocess():
    res = subprocess.run([sys.executable, "-m", "colombeau", "script", str(DATA / "session.txt"), "--seed", "7"],
                         capture_output=True, text=True)
    assert res.stdout == (DATA / "session.golden").read_text(encoding="utf-8")
    assert res.returncode == 3


def test_script_comments_and_max_code(tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("# comment\n\nmember e^(3) 2\nmember 2*e^(2) 2\n", encoding="utf-8")
    code, out, _ = call("script", str(f))
    assert code == 1
    assert out == "> member e^(3) 2\nmember\n> member 2*e^(2) 2\nnot-member\n"


def test_script_missing_file(tmp_path):
    assert call("script", str(tmp_path / "nope"))[0] == 3


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    assert "axiom-suite" in capsys.readouterr().out
