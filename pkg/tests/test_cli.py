"""Command-line interface: subcommands, exit codes, file formats."""

import json

import pytest

from prmhull import cli
from prmhull.gfmatrix import read_matrix
from prmhull.prm import build_code


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_info_report(capsys):
    code, out, _ = run(capsys, "info", "11", "3", "14")
    assert code == 0
    assert "n: 1464" in out
    assert "k: 635" in out
    assert "hull_dim: 555" in out
    assert "covering: wrap-range" in out
    assert "hull_min_distance: 88" in out


def test_info_classification(capsys):
    code, out, _ = run(capsys, "info", "5", "3", "6")
    assert code == 0
    assert "classification: SelfDual,SelfOrthogonal,DualContaining" in out


def test_info_machine_readable(capsys):
    code, out, _ = run(capsys, "info", "5", "3", "12", "--machine-readable")
    assert code == 0
    record = json.loads(out)
    assert record["classification"] == ["LCD"]
    assert record["hull_dim"] == 0
    assert record["hull_min_distance"] is None


def test_usage_errors_exit_2(capsys):
    code, _, err = run(capsys, "info", "6", "2", "1")
    assert code == 2
    assert "6 is not a prime power" in err
    code, _, err = run(capsys, "info", "5", "3", "13")
    assert code == 2
    code, _, err = run(capsys, "witness", "8", "3", "10", "--lambdas", "1,1")
    assert code == 2
    code, _, err = run(capsys, "verify", "--q", "6")
    assert code == 2
    code, _, err = run(capsys, "export", "4", "2", "2", "generator", "--modulus", "1,0,1")
    assert code == 2  # reducible modulus
    code, _, err = run(capsys, "verify", "--q", "3", "--p", "3")
    assert code == 2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_verify_single_instance(capsys):
    code, out, _ = run(capsys, "verify", "--q", "3", "--m", "2", "--v", "2,4")
    assert code == 0
    assert "instances: 2" in out
    assert "failures: 0" in out
    assert "hull-dimension" in out


def test_verify_machine_readable_stream(capsys):
    code, out, _ = run(capsys, "verify", "--q", "2", "--m", "2", "--machine-readable")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1].startswith("instances: 2")
    records = [json.loads(ln) for ln in lines[:-1]]
    assert all(rec["verdict"] == "pass" for rec in records)
    assert {rec["check"] for rec in records} >= {"dimension", "duality-dimension"}


def test_verify_out_file(tmp_path, capsys):
    path = tmp_path / "records.txt"
    code, out, _ = run(
        capsys, "verify", "--p", "2", "--k", "2", "--m", "2", "--v", "1", "--out", str(path)
    )
    assert code == 0
    assert "failures: 0" in out
    text = path.read_text()
    assert "q=4 m=2 v=1 dimension:" in text


def test_verify_bad_order_exits_2(capsys):
    code, _, err = run(capsys, "verify", "--q", "3", "--m", "2", "--v", "9")
    assert code == 2
    assert "outside" in err


def test_reproduce_examples(capsys):
    code, out, _ = run(capsys, "reproduce-examples")
    assert code == 0
    for token in ("(11,3,14)", "555", "474", "1682", "961", "75"):
        assert token in out
    assert "expected" in out and "NO" not in out


def test_reproduce_examples_machine_readable(capsys):
    code, out, _ = run(capsys, "reproduce-examples", "--machine-readable")
    assert code == 0
    records = [json.loads(ln) for ln in out.strip().splitlines()]
    assert len(records) == 5
    assert all(rec["expected"] == rec["computed"] for rec in records)
    assert records[0]["expected"] == 555
    assert records[-1]["quantity"] == "hull_min_distance"


def test_export_generator_header(capsys):
    code, out, _ = run(capsys, "export", "3", "2", "2", "generator")
    assert code == 0
    assert out.splitlines()[0] == "3 6 13"


def test_export_empty_hull_header(capsys):
    code, out, _ = run(capsys, "export", "5", "3", "12", "hull")
    assert code == 0
    assert out.splitlines()[0] == "5 0 156"


def test_export_round_trip(tmp_path, capsys):
    path = tmp_path / "gen.txt"
    code, _, _ = run(capsys, "export", "4", "2", "3", "generator", "--out", str(path))
    assert code == 0
    mat = read_matrix(path)
    assert mat == build_code(4, 2, 3).generator

    path = tmp_path / "dual.txt"
    code, _, _ = run(capsys, "export", "4", "2", "3", "dual", "--out", str(path))
    assert code == 0
    dual = read_matrix(path)
    assert dual.rows == build_code(4, 2, 3).n - build_code(4, 2, 3).k

    path = tmp_path / "hull.txt"
    code, _, _ = run(capsys, "export", "3", "2", "2", "hull", "--out", str(path))
    assert code == 0
    assert read_matrix(path).rows == 6


def test_export_simplex_rows(capsys):
    code, out, _ = run(capsys, "export", "2", "2", "1", "generator")
    assert code == 0
    assert out == "2 3 7\n1 1 1 1 0 0 0\n0 0 1 1 1 1 0\n0 1 0 1 0 1 1\n"


def test_witness_output(capsys):
    code, out, _ = run(capsys, "witness", "8", "3", "10", "--lambdas", "1,2")
    assert code == 0
    assert "witness: x1*(x0^7 - x1^7)*(x1 - x2)*(2*x1 - x2)" in out
    assert "weight: 48" in out
    assert "match: yes" in out


def test_witness_machine_readable(capsys):
    code, out, _ = run(capsys, "witness", "5", "3", "3", "--machine-readable")
    assert code == 0
    record = json.loads(out)
    assert record["weight"] == 75 and record["distance"] == 75
    assert record["verdict"] == "pass"
    assert record["lambdas"] == [1, 2]


def test_console_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "prmhull.cli", "info", "3", "2", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "hull_dim: 6" in proc.stdout
