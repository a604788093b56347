from __future__ import annotations

import io
import json
from contextlib import redirect_stdout

import pytest

from tiltcell.cli import run


def invoke(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue()


def test_delta_factors_json():
    code, out = invoke(["delta-factors", "--p", "5", "--r", "2", "--weight", "10"])
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["factors"] == [[-12, 1], [-10, 1], [8, 1], [10, 1]]


def test_output_determinism():
    args = ["verify", "--suite", "reciprocity", "--p", "3", "--r", "1", "--lo", "-9", "--hi", "18"]
    code1, out1 = invoke(args)
    code2, out2 = invoke(args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert json.loads(out1)["pass"] is True


def test_char_and_tsv():
    code, out = invoke(
        ["char", "--kind", "baby-verma", "--p", "3", "--r", "1", "--weight", "0", "--format", "tsv"]
    )
    assert code == 0
    assert out == "-4\t1\n-2\t1\n0\t1\n"


def test_hom_dim_requires_two_weights():
    code, _ = invoke(["hom-dim", "--p", "3", "--weight", "0"])
    assert code == 2


def test_usage_error_exit_codes():
    with pytest.raises(SystemExit) as exc:
        invoke(["delta-factors", "--weight", "not-a-number"])
    assert exc.value.code == 2
    code, _ = invoke(["delta-factors", "--p", "4", "--weight", "0"])
    assert code == 2
    code, _ = invoke(["verify", "--suite", "nonsense"])
    assert code == 2


def test_verify_all_small():
    code, out = invoke(["verify", "--suite", "all", "--p", "3", "--r", "2", "--lo", "-6", "--hi", "6"])
    assert code == 0
    doc = json.loads(out)
    checks = {c["check"] for c in doc["counts"]}
    assert {"reciprocity", "bounds", "strong-linkage", "mult-free", "quiver-vs-cellular"} <= checks
    assert doc["pass"] is True


def test_quiver_check_and_failure_exit():
    code, out = invoke(["quiver-check", "--preset", "p2", "--p", "3"])
    assert code == 0 and json.loads(out)["pass"] is True
    # reproducing the bare relation families must be reported as a failure
    code, out = invoke(["quiver-check", "--preset", "p2", "--p", "3", "--no-boundary-loops"])
    assert code == 1
    doc = json.loads(out)
    bad = [item for item in doc["items"] if not item["pass"]]
    assert all(item["lhs"] == 3 and item["rhs"] == 2 for item in bad)


def test_quiver_check_tsv():
    code, out = invoke(["quiver-check", "--preset", "p1", "--p", "3", "--format", "tsv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "source\ttarget\tdim"
    assert "0\t0\t2" in lines and "0\t1\t1" in lines


def test_export_dot_roundtrip():
    code1, out1 = invoke(["export-dot", "--preset", "sl3"])
    code2, out2 = invoke(["export-dot", "--preset", "sl3"])
    assert code1 == code2 == 0 and out1 == out2
    assert out1.startswith("digraph sl3 {")


def test_generators_sl3_preset():
    code, out = invoke(["generators", "--preset", "sl3"])
    assert code == 0
    assert json.loads(out)["pairs"][0] == ["w0", "st"]


def test_cell_basis_cli():
    code, out = invoke(["cell-basis", "--p", "3", "--r", "1", "--source", "0", "--target", "0"])
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 2


def test_work_cap(monkeypatch):
    monkeypatch.setenv("TILTCELL_MAX_WORK", "10")
    code, _ = invoke(["verify", "--suite", "reciprocity", "--p", "3", "--r", "1"])
    assert code == 2
    monkeypatch.setenv("TILTCELL_MAX_WORK", "junk")
    code, _ = invoke(["verify", "--suite", "reciprocity", "--p", "3", "--r", "1"])
    assert code == 2


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    code, out = invoke(["delta-factors", "--p", "3", "--weight", "0", "--output", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["factors"] == [[-2, 1], [0, 1]]
