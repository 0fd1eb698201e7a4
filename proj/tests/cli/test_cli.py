import csv
import io
import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("LORENTZ_CLI", "lorentz")


def run(*args, check=None, env=None):
    merged = dict(os.environ)
    for key in [k for k in merged if k.startswith("LORENTZ_") and k != "LORENTZ_CLI"]:
        del merged[key]
    merged.update(env or {})
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, env=merged)
    if check is not None:
        assert proc.returncode == check, proc.stderr
    return proc


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_dist_table():
    out = run("dist", "--ell", 3, "--grid", "0.01:5:500", check=0).stdout
    table = rows(out)
    assert len(table) == 500
    assert float(table[0]["G"]) > 0.99
    c3 = 9 / (2 * math.pi**2)
    one = rows(run("dist", "--ell", 3, "--grid", "0.5:1:2", check=0).stdout)[1]
    assert float(one["lambda"]) == 1.0
    assert abs(float(one["G"]) - (2 * c3 / 3) * (math.pi**2 / 6 - 1)) <= 1e-12


def test_dist_ell_2_and_4_share_C_but_not_A():
    two = rows(run("dist", "--ell", 2, "--grid", "0.1:3:30", check=0).stdout)
    four = rows(run("dist", "--ell", 4, "--grid", "0.1:3:30", check=0).stdout)
    # First branch slope 1/zeta(2) + A(ell) differs, tail weight 2C/ell differs by ell only.
    assert abs(float(two[0]["g"]) - float(four[0]["g"])) > 0.05
    lam = float(two[-1]["lambda"])
    assert lam > 1
    assert abs(float(two[-1]["G"]) / float(four[-1]["G"]) - 2.0) <= 1e-12


def test_dist_rejects_bad_input():
    assert run("dist", "--ell", 1).returncode == 2
    assert run("dist", "--grid", "5:1:10").returncode == 2
    assert run("dist", "--grid", "0.1:1:1").returncode == 2


def test_freepath_axis():
    out = json.loads(run("freepath", "--ell", 2, "--eps", 0.001, "--omega", 0, check=0).stdout)
    assert out["outcome"] == pytest.approx(0.999, abs=1e-15)
    assert out["hit"] == [1, 0]


def test_freepath_diagonal_escapes():
    out = json.loads(run("freepath", "--ell", 2, "--eps", 0.001, "--omega", math.pi / 4, check=0).stdout)
    assert out["outcome"] == "inf"
    assert out["hit"] is None


def test_freepath_engines_agree():
    out = json.loads(run("freepath", "--slope", 0.3, "--engine", "both", check=0).stdout)
    assert out["match"] is True
    for slope in (0.1234, 0.5, 0.61803398875, 0.999):
        for ell in (2, 3, 5):
            proc = run("freepath", "--ell", ell, "--eps", 0.01, "--slope", slope, "--engine", "both")
            assert proc.returncode == 0
            assert json.loads(proc.stdout)["match"] is True
    proc = run("freepath", "--eps", 0.01, "--omega", 0.3, "--engine", "both", check=0)
    assert json.loads(proc.stdout)["match"] is True


def test_freepath_usage_errors():
    assert run("freepath", "--eps", 0.001).returncode == 2
    assert run("freepath", "--omega", 0.1, "--slope", 0.1).returncode == 2
    assert run("freepath", "--eps", 0.7, "--omega", 0.1).returncode == 2
    assert run("freepath", "--slope", 0.1, "--engine", "disc").returncode == 2
    assert run("freepath", "--slope", 0.1, "--engine", "warp").returncode == 2


def test_sweep_is_deterministic(tmp_path):
    args = ["sweep", "--ell", 2, "--eps", 0.01, "--samples", 20000, "--grid", "0.01:3:50"]
    run(*args, "--out", tmp_path / "a.csv", check=0)
    run(*args, "--out", tmp_path / "b.csv", "--workers", 3, check=0)
    a = (tmp_path / "a.csv").read_bytes()
    assert a == (tmp_path / "b.csv").read_bytes()
    side = json.loads((tmp_path / "a.json").read_text())
    for key in ("ell", "epsilon", "n_samples", "seed", "sup_error", "runtime_seconds"):
        assert key in side
    assert side["n_samples"] == 20000
    assert len(rows(a.decode())) == 50


def test_sweep_error_shrinks_with_eps(tmp_path):
    summary = tmp_path / "summary.json"
    run("sweep", "--ell", 2, "--eps", "1e-2,1e-3", "--samples", 100000, "--out", tmp_path / "s.csv",
        "--json", summary, check=0)
    runs = json.loads(summary.read_text())["runs"]
    assert [r["epsilon"] for r in runs] == [1e-2, 1e-3]
    assert runs[0]["sup_error"] > runs[1]["sup_error"]
    for r in runs:
        assert os.path.exists(r["csv"])


def test_sweep_rejects_zero_samples():
    assert run("sweep", "--samples", 0).returncode == 2
    assert run("sweep", "--eps", 0).returncode == 2
    assert run("sweep", "--workers", 0, "--samples", 10).returncode == 2


def test_environment_overrides(tmp_path):
    out = run("sweep", env={"LORENTZ_SAMPLES": "1000", "LORENTZ_EPS": "0.05", "LORENTZ_GRID": "0.1:2:5",
                            "LORENTZ_OUT": str(tmp_path / "e.csv")}, check=0)
    assert "sup_error" in out.stderr
    assert len(rows((tmp_path / "e.csv").read_text())) == 5


def test_billiard_hex_with_svg(tmp_path):
    svg = tmp_path / "hex.svg"
    run("billiard", "--table", "hex", "--eps", 0.01, "--samples", 20000, "--out", tmp_path / "hex.csv",
        "--svg", svg, "--cross-check", 200, check=0)
    text = svg.read_text()
    assert text.startswith("<svg") or text.startswith("<?xml")
    assert text.count("<polyline") == 2
    side = json.loads((tmp_path / "hex.json").read_text())
    assert side["table"] == "hex"
    assert side["max_engine_gap"] <= 1e-9


def test_billiard_square_runs(tmp_path):
    run("billiard", "--table", "square", "--eps", 0.01, "--samples", 5000, "--out", tmp_path / "sq.csv",
        check=0)
    side = json.loads((tmp_path / "sq.json").read_text())
    assert side["table"] == "square"
    assert run("billiard", "--table", "circle").returncode == 2


def test_verify_identities():
    proc = run("verify", "identities", check=0)
    lines = proc.stdout.splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)
    text = proc.stdout
    for needle in ("dilog(1/2)", "H1 bracket", "g continuous"):
        assert needle in text


def test_verify_sums_prints_table():
    proc = run("verify", "sums", "--Q", 500)
    assert "sum,Q,lambda,ell,enumerated,predicted,rel_err" in proc.stdout
    assert proc.returncode in (0, 3)


def test_verify_unknown_suite():
    assert run("verify", "nonsense").returncode == 2
    assert run("verify", "sums", "--Q", 1).returncode == 2
