import json
import shutil
import subprocess

import pytest

from prelie_rota.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert out.splitlines()[0] == "A1: e1.e1 = e1 + e2; e2.e1 = e2"
    assert len(out.splitlines()) == 8
    code, out, _ = run(capsys, "catalog", "--json")
    assert [a["name"] for a in json.loads(out)] == [f"A{i}" for i in range(1, 9)]


def test_check_prelie(capsys):
    code, out, _ = run(capsys, "check-prelie", "--algebra", "A8")
    assert code == 0
    assert "left pre-Lie: PASS (8/8 triples)" in out
    code, out, _ = run(capsys, "check-prelie", "--algebra", "A5", "--alpha=-1/2")
    assert code == 0


def test_solve_a1_rb0(capsys):
    code, out, _ = run(capsys, "solve", "--algebra", "A1", "--operator", "rota-baxter", "--weight", "0")
    assert code == 0
    assert "1 families" in out
    assert "free: R12" in out


def test_build_then_solve_round_trip(tmp_path, capsys):
    f = tmp_path / "sys.json"
    for args in (["--algebra", "A6", "--operator", "nijenhuis", "--alpha", "2"],
                 ["--algebra", "A3", "--operator", "rota-baxter", "--weight", "1"]):
        assert run(capsys, "build-system", *args, "--out", str(f))[0] == 0
        _, from_file, _ = run(capsys, "solve", "--system", str(f), "--format", "json")
        _, direct, _ = run(capsys, "solve", *args, "--format", "json")
        assert from_file == direct


def test_oracle_grid(capsys):
    code, out, _ = run(capsys, "oracle-grid", "--algebra", "A1", "--operator", "rota-baxter", "--grid=-1,0,1")
    data = json.loads(out)
    assert code == 0 and data["points"] == 81
    assert data["solutions"] == [[["0", t], ["0", "0"]] for t in ("-1", "0", "1")]


def test_verify_tables_exit_two(capsys):
    code, out, _ = run(capsys, "verify-tables", "--algebra", "A1", "--operator", "reynolds")
    assert code == 2
    rep = json.loads(out)
    (cell,) = rep["cells"]
    for cmp in cell["comparisons"]:
        assert [["1", "0"], ["0", "1"]] in cmp["uncovered_grid_solutions"]


def test_verify_tables_markdown_deterministic(capsys):
    args = ("verify-tables", "--algebra", "A8", "--operator", "averaging", "--format", "markdown")
    a = run(capsys, *args)
    b = run(capsys, *args)
    assert a == b
    assert "| AVG/A8/P2 |" in a[1]


def test_verify_tables_single_convention(capsys):
    code, out, _ = run(capsys, "verify-tables", "--algebra", "A4", "--operator", "nijenhuis", "--convention", "row")
    rep = json.loads(out)
    assert rep["config"]["conventions"] == ["row"]


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--algebra", "A9", "--operator", "reynolds"],
        ["solve", "--algebra", "A5", "--operator", "reynolds"],
        ["solve", "--algebra", "A1", "--operator", "reynolds", "--alpha", "1"],
        ["solve", "--algebra", "A1", "--operator", "blah"],
        ["solve", "--algebra", "A1", "--operator", "nijenhuis", "--weight", "1"],
        ["oracle-grid", "--algebra", "A1", "--operator", "reynolds", "--grid", "1/0"],
        ["check-prelie", "--algebra", "A5", "--alpha", "x"],
        ["solve", "--system", "/nonexistent/file.json"],
        ["no-such-command"],
    ],
)
def test_usage_errors_exit_one(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_help_documents_defaults(capsys):
    assert main(["audit-all", "--help"]) == 0
    out = capsys.readouterr().out
    assert "-2,-1,-1/2,0,1/2,1,2" in out
    assert "-1,0,1/2,1,2" in out


@pytest.mark.skipif(shutil.which("prelie-rota") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["prelie-rota", "check-prelie", "--algebra", "A1"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "left pre-Lie: PASS (8/8 triples)" in out.stdout


def test_parallel_workers_same_report(capsys):
    args = ("verify-tables", "--algebra", "A6", "--operator", "rota-baxter", "--weight", "1")
    serial = run(capsys, *args, "--workers", "1")
    parallel = run(capsys, *args, "--workers", "3")
    assert serial == parallel
