"""Command line interface: subcommands, JSON output, exit codes."""
import json

import pytest

from g2kit.cli import (
    EXIT_FAIL,
    EXIT_JACOBI,
    EXIT_OK,
    EXIT_USAGE,
    main,
)


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = int(exc.code or 0)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_eps_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "eps")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["suite"] == "eps"
    assert data["pass"] is True
    assert all(c["pass"] for c in data["checks"])


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == EXIT_USAGE


def test_analyze_builtin_example(capsys):
    code, out, _ = run(capsys, "analyze", "--example", "erp-sl2c")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["torsion"]["tau2"] == "6*w45 + -6*w67"
    assert float(data["scalar_curvature"]) == -36.0
    assert data["erp_residual"] == 0
    eig = sorted(round(x, 6) for x in data["ricci_spectrum"])
    assert eig == [-12.0, -12.0, -12.0, 0.0, 0.0, 0.0, 0.0]


def test_analyze_closed_structure_reports_pinch(capsys):
    code, out, _ = run(capsys, "analyze", "--example", "fernandez")
    assert code == EXIT_OK
    data = json.loads(out)
    assert float(data["scalar_curvature"]) == -1.0
    assert data["pinch_ratio"] == "39/4"


def test_flow_summary_and_trace(tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    code, out, _ = run(
        capsys,
        "flow",
        "--example",
        "fernandez",
        "--t-end",
        "0.05",
        "--dt",
        "0.001",
        "--record-every",
        "10",
        "--output",
        str(trace),
    )
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["steps_recorded"] >= 1
    assert trace.exists()
    header = trace.read_text().splitlines()[0]
    assert header.startswith("t,vol,tau2_sq,scal")


def test_examples_written_byte_stable(tmp_path, capsys):
    import os

    cwd = os.getcwd()
    os.chdir(tmp_path)
    try:
        code1, out1, _ = run(capsys, "examples", "--name", "fernandez")
        body1 = (tmp_path / "fernandez.algebra.json").read_bytes()
        code2, out2, _ = run(capsys, "examples", "--name", "fernandez")
        body2 = (tmp_path / "fernandez.algebra.json").read_bytes()
    finally:
        os.chdir(cwd)
    assert code1 == code2 == EXIT_OK
    assert body1 == body2
    data = json.loads(body1)
    assert data["dim"] == 7


def test_examples_unknown_name(capsys):
    code, _, _ = run(capsys, "examples", "--name", "not-a-thing")
    assert code == EXIT_USAGE


def test_bad_algebra_file_reports_jacobi(tmp_path, capsys):
    bad = {
        "name": "broken",
        "dim": 7,
        "d": [
            {"target": 1, "terms": [{"j": 2, "k": 3, "coeff": 1}]},
            {"target": 2, "terms": [{"j": 4, "k": 5, "coeff": 1}]},
        ],
    }
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    code, _, _ = run(capsys, "analyze", "--algebra", str(p))
    assert code == EXIT_JACOBI


def test_missing_file_is_usage_error(capsys):
    code, _, _ = run(capsys, "analyze", "--algebra", "/nonexistent.json")
    assert code == EXIT_USAGE
