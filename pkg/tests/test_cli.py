import json

import pytest

from powerspace.cli import main, parse_expression
from powerspace.errors import ParseError


@pytest.fixture
def sierpinski_file(tmp_path):
    path = tmp_path / "sierpinski.json"
    path.write_text(json.dumps({"points": ["bot", "top"], "order": [["bot", "top"]]}))
    return path


@pytest.fixture
def d2_file(tmp_path):
    path = tmp_path / "d2.json"
    path.write_text(json.dumps({"points": ["a", "b"], "opens": [[0], [1]]}))
    return path


def test_expression_parser():
    assert parse_expression("K(A(X))") == ["K", "A"]
    assert parse_expression("O(O(X))") == ["O", "O"]
    assert parse_expression("X") == []
    with pytest.raises(ParseError):
        parse_expression("K(A(X)")
    with pytest.raises(ParseError):
        parse_expression("Q(X)")


def test_verify_homeo_exit_code_and_summary(capsys):
    assert main(["verify", "--suite", "homeo", "--max-points", "2"]) == 0
    out = capsys.readouterr().out
    assert "failed=0" in out
    assert all(line.startswith(("PASS", "suite=")) for line in out.strip().splitlines())


def test_verify_counterexamples(capsys):
    assert main(["verify", "--suite", "counterexamples"]) == 0
    out = capsys.readouterr().out
    assert "suite=counterexamples" in out and "failed=0" in out
    assert out.count("PASS") == 4


def test_verify_all_trivial(capsys):
    assert main(["verify", "--suite", "all", "--max-points", "1"]) == 0
    out = capsys.readouterr().out
    assert "failed=0" in out


def test_verify_deterministic_output(capsys, tmp_path):
    argv = ["verify", "--suite", "monad", "--max-points", "2", "--seed", "5"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second


def test_verify_json_report(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    assert main(["verify", "--suite", "counterexamples", "--json", str(report_path)]) == 0
    capsys.readouterr()
    data = json.loads(report_path.read_text())
    assert data["failed"] == 0
    assert "timings" in data
    stripped = {k: v for k, v in data.items() if k != "timings"}
    assert all(c["passed"] for c in stripped["checks"])


def test_build_dot_chain(sierpinski_file, tmp_path, capsys):
    out = tmp_path / "ka.dot"
    assert main(["build", str(sierpinski_file), "--expr", "K(A(X))", "--format", "dot", "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "K(A(X)): 4 points" in stdout
    dot = out.read_text()
    assert dot.count("->") == 3


def test_build_json_double_lattice(d2_file, capsys):
    assert main(["build", str(d2_file), "--expr", "O(O(X))", "--format", "json"]) == 0
    stdout = capsys.readouterr().out
    assert "O(O(X)): 6 points" in stdout


def test_build_antichain_double_lattice(tmp_path, capsys):
    path = tmp_path / "a3.json"
    path.write_text(json.dumps({"points": ["x", "y", "z"], "order": []}))
    assert main(["build", str(path), "--expr", "O(O(X))", "--format", "json", "--out", str(tmp_path / "o.json")]) == 0
    assert "O(O(X)): 20 points" in capsys.readouterr().out


def test_build_cap_exit_code(tmp_path, capsys, d2_file):
    assert main(["build", str(d2_file), "--expr", "A(A(A(X)))", "--cap", "7"]) == 2


def test_build_bad_expression(d2_file, capsys):
    assert main(["build", str(d2_file), "--expr", "Z(X)"]) == 3


def test_build_missing_file(tmp_path):
    assert main(["build", str(tmp_path / "nope.json"), "--expr", "A(X)"]) == 3


def test_enumerate_counts(tmp_path, capsys):
    out = tmp_path / "spaces.jsonl"
    assert main(["enumerate", "-n", "2", "--out", str(out)]) == 0
    lines = [json.loads(l) for l in out.read_text().splitlines()]
    assert len(lines) == 3
    assert main(["enumerate", "-n", "3", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 8
    assert main(["enumerate", "-n", "0", "--include-empty", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 1


def test_enumerate_limit_exit_code(capsys):
    assert main(["enumerate", "-n", "7"]) == 2
