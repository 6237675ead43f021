"""
CLI checks through prandtl.main.main(argv): exit codes, CSV layout, traces.
"""

import io
import json
import re
import sys
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

DATA = ROOT / "data"


def _run(*argv):
    from prandtl.main import main

    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def _line(err: str, prefix: str) -> str:
    """First stderr line with the given prefix; log records may precede it."""
    return next((line for line in err.splitlines() if line.startswith(prefix)), "")


def _write(directory: str, name: str, payload: dict) -> str:
    path = Path(directory) / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_solve_writes_grid_and_trace():
    with tempfile.TemporaryDirectory() as tmp:
        code, out, err = _run("--log-dir", tmp, "solve", "--config", str(DATA / "example_4_3.json"), "--m", "16")
        assert code == 0, err
        lines = out.splitlines()
        assert lines[0] == "y,zeta" and len(lines) == 202, f"{len(lines)} lines"
        assert lines[1].startswith("-1.00,") and float(lines[1].split(",")[1]) == 0.0
        assert _line(err, "m=16,cond_inf="), err
        records = (Path(tmp) / "traces.jsonl").read_text(encoding="utf-8").splitlines()
        assert len(records) == 1 and json.loads(records[0])["method"] == "method2"
    print("PASS: solve prints zeta on the grid and logs a trace")


def test_study_csv():
    with tempfile.TemporaryDirectory() as tmp:
        target = Path(tmp) / "study.csv"
        code, _, err = _run("--log-dir", tmp, "study", "--config", str(DATA / "example_4_3.json"),
                            "--m-list", "8,16,32", "--ref", "64", "--out", str(target))
        assert code == 0, err
        raw = target.read_bytes()
        assert b"\r\n" not in raw, "CSV must use LF line endings"
        lines = raw.decode("utf-8").splitlines()
        assert lines[0] == "m,cond_inf,err,EOC,nu" and len(lines) == 4
        assert lines[1].endswith(",,") and not lines[2].endswith(",,")
        traces = (Path(tmp) / "traces.jsonl").read_text(encoding="utf-8").splitlines()
        assert len(traces) == 3 and json.loads(traces[0])["reference"] == "zeta_64"
    print("PASS: study writes the convergence CSV")


def test_wing_and_tables():
    with tempfile.TemporaryDirectory() as tmp:
        code, out, err = _run("--log-dir", tmp, "wing", "--shape", "elliptic", "--b", "10", "--beta", "1",
                              "--eps", "0.1", "--m-list", "2,4")
        assert code == 0, err
        row = out.splitlines()[1].split(",")
        assert row[0] == "2" and float(row[2]) <= 1e-13, f"elliptic wing at m=2: {row}"
        code, out, err = _run("--log-dir", tmp, "tables", "--example", "4.1-linear")
        assert code == 0, err
        assert [line.split(",")[0] for line in out.splitlines()[1:]] == ["2", "4", "8"]
    print("PASS: wing and tables subcommands")


def test_check_reports_constraints():
    with tempfile.TemporaryDirectory() as tmp:
        code, out, _ = _run("--log-dir", tmp, "check", "--config", str(DATA / "example_4_2.json"))
        assert code == 0 and out.splitlines()[0] == "method1: ok", out
        bad = _write(tmp, "low_gamma.json", {"alpha": 0.25, "gamma": 0.0, "g": "1"})
        code, out, _ = _run("--log-dir", tmp, "check", "--config", bad)
        assert code == 2 and "gamma" in out.splitlines()[0], out
        code, _, err = _run("--log-dir", tmp, "solve", "--config", bad, "--m", "8")
        assert code == 2 and _line(err, "error: validation:"), err
    print("PASS: check and exponent validation exit 2")


def test_config_errors_exit_two():
    with tempfile.TemporaryDirectory() as tmp:
        code, _, err = _run("--log-dir", tmp, "solve", "--config", str(DATA / "invalid_sigma_alpha.json"), "--m", "8")
        assert code == 2 and _line(err, "error: config:"), err
        assert sum(line.startswith("error:") for line in err.splitlines()) == 1, err
        syntax = _write(tmp, "syntax.json", {"alpha": 0.5, "g": "1 +"})
        code, _, err = _run("--log-dir", tmp, "solve", "--config", syntax, "--m", "8")
        assert code == 2 and _line(err, "error: config:"), err
        code, _, err = _run("--log-dir", tmp, "solve", "--config", str(Path(tmp) / "missing.json"), "--m", "8")
        assert code == 2 and _line(err, "error: config:"), err
        code, _, err = _run("--log-dir", tmp, "study", "--config", str(DATA / "example_4_3.json"), "--m-list", "8,x")
        assert code == 2 and _line(err, "error: validation:"), err
        code, _, err = _run("--log-dir", tmp, "study", "--config", str(DATA / "example_4_3.json"),
                            "--m-list", "16,8")
        assert code == 2, err
    print("PASS: configuration errors exit 2 with one line")


def test_numeric_errors_exit_one():
    with tempfile.TemporaryDirectory() as tmp:
        code, _, err = _run("--log-dir", tmp, "solve", "--config", str(DATA / "example_4_3.json"), "--m", "1")
        assert code == 1 and _line(err, "error: domain:"), err
        domain = _write(tmp, "log_rhs.json", {"alpha": 0.5, "g": "log(y)"})
        code, _, err = _run("--log-dir", tmp, "solve", "--config", domain, "--m", "8")
        assert code == 1 and "log" in _line(err, "error: domain:"), err
    print("PASS: numerical failures exit 1")


def test_usage_errors():
    for argv in ([], ["solve"], ["frobnicate"], ["wing", "--shape", "delta", "--b", "1", "--beta", "1",
                                                  "--eps", "0.1", "--m-list", "2"]):
        try:
            _run(*argv)
        except SystemExit as e:
            assert e.code == 2, f"{argv}: exit {e.code}"
        else:
            raise AssertionError(f"{argv} should be a usage error")
    print("PASS: argparse usage errors")


def test_hidden_moments_command():
    with tempfile.TemporaryDirectory() as tmp:
        code, out, err = _run("--log-dir", tmp, "moments", "--alpha", "0.5", "--kind", "log", "--m", "8",
                              "--y", "0.1,-0.5", "--check", "4")
        assert code == 0, err
        lines = out.splitlines()
        assert lines[0] == "y,c0,c1,c2,c3,c4,c5,c6,c7" and lines[1].startswith("0.1,")
        deviation = float(re.search(r"oracle_deviation=(\S+)", err).group(1))
        assert deviation <= 1e-8, err
        code, _, err = _run("--log-dir", tmp, "moments", "--alpha", "0.5", "--kind", "abs_pow", "--m", "8",
                            "--y", "0.1")
        assert code == 2 and "mu" in _line(err, "error: validation:"), err
    print("PASS: moment table regeneration")


def main():
    test_solve_writes_grid_and_trace()
    test_study_csv()
    test_wing_and_tables()
    test_check_reports_constraints()
    test_config_errors_exit_two()
    test_numeric_errors_exit_one()
    test_usage_errors()
    test_hidden_moments_command()
    print("All CLI checks passed.")


if __name__ == "__main__":
    main()
