import csv
import io
import json
import math
import subprocess
import sys

import pytest

from exopoly.cli import main, parse_rat, parse_range
from fractions import Fraction as F


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parsers():
    assert parse_rat("5/4") == F(5, 4)
    assert parse_rat("-1/2") == F(-1, 2)
    assert parse_rat("0.25") == F(1, 4)
    assert parse_range("2..6") == (2, 6)
    assert parse_range("3") == (3, 3)


def test_gen_xm_json(capsys):
    code, out, _ = run(["gen", "xm-jacobi", "--alpha", "5/4", "--beta", "1/2", "--m", "2", "--n", "2..6"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == "xm-jacobi" and doc["params"]["alpha"] == "5/4"
    assert [r["n"] for r in doc["rows"]] == [2, 3, 4, 5, 6]
    for r in doc["rows"]:
        j = r["n"] - 2
        assert F(r["eigenvalue"]) == -j * (j + 1 + F(7, 4))
        assert all(isinstance(c, str) for c in r["coeffs"])
        assert len(r["coeffs"]) == r["n"] + 1


def test_gen_legendre_csv(capsys):
    code, out, _ = run(["gen", "classical-jacobi", "--alpha", "0", "--beta", "0", "--n", "0..3", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:3] == ["n", "eigenvalue", "value_at_1"]
    p2 = rows[3]
    assert p2[0] == "2" and p2[3:6] == ["-1/2", "0", "3/2"]


def test_gen_x1_laguerre(capsys):
    code, out, _ = run(["gen", "x1-laguerre", "--k", "2", "--n", "1"], capsys)
    assert code == 0
    assert json.loads(out)["rows"][0]["coeffs"] == ["-3", "-1"]


def test_admissible(capsys):
    code, out, _ = run(["admissible", "--alpha", "1/3", "--beta", "-1/2", "--m", "2"], capsys)
    assert code == 0 and "admissible" in out
    code, out, _ = run(["admissible", "--alpha", "3/2", "--beta", "1/2", "--m", "2"], capsys)
    assert code == 1 and "degenerate" in out and "alpha - beta - m + 1 = 0" in out
    code, out, _ = run(["admissible", "--alpha", "0", "--beta", "1", "--m", "1"], capsys)
    assert code == 1 and "alpha = 0 lies in 0..0" in out


@pytest.mark.parametrize("suite", ["identities", "factorizations", "orthogonality", "norms"])
def test_verify_suites(suite, capsys):
    code, out, _ = run(["verify", suite, "--alpha", "5/4", "--beta", "1/2", "--m", "2"], capsys)
    assert code == 0, out
    assert out.rstrip().endswith("all passed")


def test_verify_flags_example5(capsys):
    code, out, _ = run(["verify", "flags", "--example", "5"], capsys)
    assert code == 0
    for name in ("T1", "T2", "T3"):
        assert name in out


def test_sample_weights(capsys):
    code, out, _ = run(["sample", "xm-jacobi", "weight", "--alpha", "1/3", "--beta", "-1/2", "--m", "2", "--x", "0"], capsys)
    assert code == 0
    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(288**2 / 1681, rel=1e-14)
    code, out, _ = run(["sample", "x1-laguerre", "weight", "--k", "2", "--x", "2"], capsys)
    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(math.exp(-2) / 4, rel=1e-14)


def test_sample_poly_normalization(capsys):
    code, out, _ = run(["sample", "xm-jacobi", "poly", "--alpha", "5/4", "--beta", "1/2", "--m", "2", "--n", "4", "--x", "1"], capsys)
    assert code == 0
    from exopoly.xm_jacobi import XmParams, xm_value_at_1

    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(float(xm_value_at_1(XmParams(F(5, 4), F(1, 2), 2), 4)))


def test_sample_grid(capsys):
    code, out, _ = run(["sample", "classical-jacobi", "weight", "--alpha", "1", "--beta", "1", "--points", "5"], capsys)
    rows = out.splitlines()[1:]
    assert code == 0 and len(rows) == 5 and rows[0].startswith("-1.0,")


def test_errors(capsys):
    code, _, err = run(["sample", "x1-laguerre", "weight", "--k", "2", "--x", "-1"], capsys)
    assert code == 1 and json.loads(err)["error"] == "DomainError"
    code, _, err = run(["gen", "xm-jacobi", "--alpha", "1", "--beta", "1/2", "--m", "2", "--n", "2..3"], capsys)
    assert code == 1 and json.loads(err)["error"] == "ParameterError"
    code, _, err = run(["gen", "x1-jacobi", "--alpha", "1"], capsys)
    assert code == 2
    code, _, _ = run(["gen", "no-such-family"], capsys)
    assert code == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "t.json"
    code, out, _ = run(["gen", "x1-jacobi", "--alpha", "1", "--beta", "2", "--n", "1..3", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["rows"][0]["coeffs"] == ["5/4", "-1/4"]


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "exopoly", "gen", "xm-jacobi", "--alpha", "1/3", "--beta", "-1/2", "--m", "2", "--n", "2..5"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
