import json
import pathlib
import subprocess
import sys

import jsonschema
import pytest

from glcoh.cli import exit_status, load_schema, main

SESSION = pathlib.Path(__file__).parents[1] / "sessions" / "ex5.glc"


def run(capsys, *args):
    code = main([str(SESSION), *args])
    out, err = capsys.readouterr()
    return code, out, err


def json_lines(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


@pytest.mark.parametrize("command, text", [
    ("dim R", "1"),
    ("depth N", "1"),
    ("pd N", "infinite"),
    ("id N", "infinite"),
    ("ext 1 N R", "0"),
    ("ext 1 N N", "0"),
    ("grade a R", "0"),
])
def test_example_session_text_output(capsys, command, text):
    code, out, _ = run(capsys, *command.split())
    assert code == 0
    assert out.strip() == f"{command}: {text}"


def test_example_session_full_run(capsys):
    code, out, _ = run(capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "dim R: 1"
    assert any(line.startswith("check EX5 R N: verified") for line in lines)


def test_json_reports_validate(capsys):
    code, out, _ = run(capsys, "--json")
    assert code == 0
    schema = load_schema()
    reports = json_lines(out)
    assert len(reports) == 16
    for rep in reports:
        jsonschema.validate(rep, schema)
        assert rep["runtime_ms"] is None
    first = reports[0]
    assert first["command"] == "dim R" and first["result"] == 1
    assert first["inputs"]["options"] == {"window": None, "nmax": 6, "seed": 0}
    pd = next(r for r in reports if r["command"] == "pd N")
    assert pd["result"] == "infinite"
    assert "betti_totals" in pd["witnesses"]


def test_json_output_is_byte_identical(capsys):
    _, first, _ = run(capsys, "--json")
    _, second, _ = run(capsys, "--json")
    assert first == second
    for line in first.splitlines():
        assert line == json.dumps(json.loads(line), sort_keys=True)


def test_timing_flag_fills_runtime(capsys):
    code, out, _ = run(capsys, "dim", "R", "--json", "--timing")
    (rep,) = json_lines(out)
    assert code == 0 and isinstance(rep["runtime_ms"], (int, float))
    jsonschema.validate(rep, load_schema())


def test_window_flag(capsys):
    code, out, _ = run(capsys, "cech", "1", "R", "N", "--json", "--window", "-3", "2")
    (rep,) = json_lines(out)
    assert code == 0
    assert rep["inputs"]["options"]["window"] == [-3, 2]
    assert rep["result"]["window"] == [-3, 2]
    assert rep["result"]["values"] == [1, 1, 1, 0, 0, 0]


def test_field_flag_switches_coefficients(capsys):
    code, out, _ = run(capsys, "pd", "N", ";", "dim", "R", "--field", "QQ")
    assert code == 0
    assert out.splitlines() == ["pd N: infinite", "dim R: 1"]


def test_commands_separated_by_semicolons(capsys):
    code, out, _ = run(capsys, "dim R; depth N")
    assert code == 0 and out.splitlines() == ["dim R: 1", "depth N: 1"]


def test_hypothesis_not_met_is_not_an_error(capsys):
    code, out, _ = run(capsys, "check", "T5.1", "R", "N", "--json")
    (rep,) = json_lines(out)
    assert code == 0 and rep["status"] == "hypothesis-not-met"


@pytest.mark.parametrize("args", [
    ["dim"],
    ["frobnicate", "R"],
    ["ext", "one", "N", "R"],
    ["ext", "-1", "N", "R"],
    ["dim", "Z"],
    ["check", "T9.9", "R", "N"],
    ["dim", "R", "--nmax", "1"],
    ["dim", "R", "--window", "3", "1"],
    ["dim", "R", "--bogus"],
])
def test_usage_errors_exit_two(capsys, args):
    code, _, err = run(capsys, *args)
    assert code == 2 and err


def test_missing_file_and_parse_error(tmp_path, capsys):
    assert main([str(tmp_path / "nope.glc")]) == 2
    bad = tmp_path / "bad.glc"
    bad.write_text("ring R = poly(GF(101),[x],grevlex)\nmodule N = coker(R, [[z]])\n")
    assert main([str(bad)]) == 2
    _, err = capsys.readouterr()
    assert f"{bad}:2:" in err


def test_exit_status_reflects_failures():
    assert exit_status([{"status": "ok"}, {"status": "hypothesis-not-met"}]) == 0
    assert exit_status([{"status": "verified"}, {"status": "FAILED"}]) == 1
    assert exit_status([]) == 0


def test_suite_command(capsys):
    code, out, _ = run(capsys, "suite", "builtin", "EX5", "T5.1", "--json")
    (rep,) = json_lines(out)
    assert code == 0 and rep["status"] == "ok"
    jsonschema.validate(rep, load_schema())


def test_help_and_console_entry():
    proc = subprocess.run([sys.executable, "-m", "glcoh.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "gen-canonical" in proc.stdout
