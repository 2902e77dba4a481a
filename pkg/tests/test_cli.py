"""CLI behaviour: subcommands, exit codes, determinism, schema validation."""

import importlib.resources
import json

import jsonschema
import pytest

from grassnest.cli import dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


@pytest.fixture(scope="module")
def schema():
    path = importlib.resources.files("grassnest") / "schemas" / "cli_report.schema.json"
    return json.loads(path.read_text())


def test_grassmann_count_example(capsys):
    code, out, _ = run(capsys, "grassmann", "count", "-q", "2", "-n", "4", "-i", "1")
    assert code == 0
    assert out == "15\n"


def test_grassmann_count_accepts_p_k(capsys):
    code, out, _ = run(capsys, "grassmann", "count", "-p", "2", "-k", "2", "-n", "3", "-i", "1")
    assert code == 0
    assert out.strip() == "21"


def test_grassmann_enum_text(capsys):
    code, out, _ = run(capsys, "grassmann", "enum", "-q", "2", "-n", "3", "-i", "1")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 7
    assert lines[0] == "0\t1\t0\t0"


def test_nest_match_perfect(capsys):
    code, out, _ = run(capsys, "nest", "match", "-q", "2", "-n", "4", "-i", "1", "-j", "3")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 15
    assert all(len(line.split("\t")) == 2 for line in lines)


def test_nest_match_json_report(capsys):
    code, data, _ = run_json(capsys, "nest", "match", "-q", "2", "-n", "4", "-i", "1", "-j", "3")
    assert code == 0
    assert data["perfect"] is True
    assert data["verifiedNesting"] is True
    assert data["elapsedMs"] == 0
    assert len(data["pairs"]) == 15


def test_nest_hall(capsys):
    code, data, _ = run_json(
        capsys, "nest", "hall", "-q", "2", "-n", "4", "-i", "1", "-j", "3",
        "--samples", "50", "--seed", "1",
    )
    assert code == 0
    assert data["minSlack"] >= 0
    assert data["doubleCountOk"] is True


def test_nest_perp_single(capsys):
    code, data, _ = run_json(
        capsys, "nest", "perp", "-q", "2", "-n", "4", "--dim", "1", "--id", "0"
    )
    assert code == 0
    assert data["perpDim"] == 3
    assert data["basis"] == [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]


def test_nest_perp_map(capsys):
    code, data, _ = run_json(capsys, "nest", "perp", "-q", "3", "-n", "4")
    assert code == 0
    assert data["perfect"] is True
    assert data["involution"] is True
    assert len(data["pairs"]) == 40


def test_nest_linear_check(capsys):
    code, data, _ = run_json(
        capsys, "nest", "linear-check", "-q", "2", "--gram", "0,1;1,0"
    )
    assert code == 0
    assert data["isAlternating"] is True and data["agree"] is True
    code, data, _ = run_json(
        capsys, "nest", "linear-check", "-q", "2", "--gram", "1,1;1,0"
    )
    assert code == 0
    assert data["isAlternating"] is False
    assert data["isNestingExhaustive"] is False


def test_chern_verify(capsys):
    code, data, _ = run_json(capsys, "chern", "verify", "--dmax", "6")
    assert code == 0
    assert data["ok"] is True and data["failures"] == []


def test_chern_certificate(capsys):
    code, data, _ = run_json(capsys, "chern", "certificate", "--dmax", "10")
    assert code == 0
    assert data["pass"] is True
    assert data["quadricGramDet"] == "1/2"
    assert {e["gcdDegree"] for e in data["entries"]} == {0}


def test_chern_obstruction(capsys):
    code, data, _ = run_json(capsys, "chern", "obstruction", "-n", "5", "-i", "2", "-j", "3")
    assert code == 0
    assert data["noFactorization"] is True
    code, data, _ = run_json(capsys, "chern", "obstruction", "-n", "4", "-i", "1", "-j", "2")
    assert code == 0
    assert data["noFactorization"] is False
    assert data["survivingJ"] == [2, 3]


def test_schw_check_pass_and_fail(capsys):
    code, data, _ = run_json(capsys, "schw", "check", "--poly", "1,0,-1", "-m", "5")
    assert code == 0 and data["pass"] is True
    code, data, _ = run_json(capsys, "schw", "check", "--poly", "1,1,1", "-m", "4")
    assert code == 1 and data["pass"] is False
    assert "1/4" in data["values"]


def test_schw_check_rationals_in_text(capsys):
    code, out, _ = run(capsys, "schw", "check", "--poly", "1,1,1", "-m", "4")
    assert code == 1
    assert "1/4" in out


def test_schw_classify_example(capsys):
    code, data, _ = run_json(capsys, "schw", "classify", "-n", "6")
    assert code == 0
    assert sorted(s["j"] for s in data["survivors"]) == [2, 5]
    j2 = next(s for s in data["survivors"] if s["j"] == 2)
    assert j2["annotation"]


def test_schw_classify_csv(capsys):
    code, out, _ = run(capsys, "schw", "classify", "-n", "6", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "n,j,splits,survivors"


def test_schw_trace(capsys):
    code, data, _ = run_json(capsys, "schw", "trace", "--poly", "1,1,1", "-m", "5")
    assert code == 0
    assert data["ok"] is True
    assert data["checks"][0] == {"i": 0, "trace": -3, "scaledBinomialSum": "-3/1"}


def test_usage_errors_exit_2(capsys):
    code, _, _ = run(capsys, "grassmann", "count", "-q", "2", "-n", "4")
    assert code == 2  # missing -i
    code, _, err = run(capsys, "grassmann", "count", "-q", "6", "-n", "4", "-i", "1")
    assert code == 2  # 6 is not a prime power
    assert "error" in err
    code, _, err = run(capsys, "nest", "linear-check", "-q", "2", "--gram", "1,1;1,1")
    assert code == 2  # singular Gram matrix
    code, _, err = run(capsys, "schw", "check", "--poly", "2,1", "-m", "4")
    assert code == 2  # constant term must be 1
    code, _, _ = run(capsys, "grassmann", "enum", "-q", "2", "-n", "3", "-i", "1",
                     "--format", "csv")
    assert code == 2  # csv unsupported here


def test_help_exits_0(capsys):
    code, _, _ = run(capsys, "--help")
    assert code == 0


def test_byte_identical_reruns(capsys):
    outputs = set()
    for _ in range(2):
        _, out, _ = run(capsys, "nest", "hall", "-q", "2", "-n", "4", "-i", "1",
                        "-j", "3", "--samples", "25", "--seed", "5", "--format", "json")
        outputs.add(out)
    assert len(outputs) == 1
    outputs = set()
    for _ in range(2):
        _, out, _ = run(capsys, "schw", "classify", "-n", "8", "--format", "json")
        outputs.add(out)
    assert len(outputs) == 1


def test_output_file_and_env_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("GRASSNEST_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "grassmann", "count", "-q", "2", "-n", "4", "-i", "1",
                       "-o", "count.txt")
    assert code == 0
    assert out == ""
    assert (tmp_path / "count.txt").read_text() == "15\n"


ALL_JSON_COMMANDS = [
    ("grassmann", "count", "-q", "2", "-n", "4", "-i", "1"),
    ("grassmann", "enum", "-q", "2", "-n", "3", "-i", "1"),
    ("nest", "match", "-q", "2", "-n", "4", "-i", "1", "-j", "3"),
    ("nest", "hall", "-q", "2", "-n", "4", "-i", "1", "-j", "3", "--samples", "20"),
    ("nest", "perp", "-q", "2", "-n", "4", "--id", "0"),
    ("nest", "perp", "-q", "2", "-n", "4"),
    ("nest", "linear-check", "-q", "2", "--gram", "0,1;1,0"),
    ("chern", "verify", "--dmax", "4"),
    ("chern", "certificate", "--dmax", "5"),
    ("chern", "obstruction", "-n", "5", "-i", "2", "-j", "3"),
    ("chern", "obstruction", "-n", "4", "-i", "1", "-j", "2"),
    ("schw", "check", "--poly", "1,0,-1", "-m", "4"),
    ("schw", "classify", "-n", "6"),
    ("schw", "trace", "--poly", "1,1,1", "-m", "5"),
]


@pytest.mark.parametrize("argv", ALL_JSON_COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_every_json_report_validates_against_schema(capsys, schema, argv):
    _, data, _ = run_json(capsys, *argv)
    jsonschema.validate(data, schema)
