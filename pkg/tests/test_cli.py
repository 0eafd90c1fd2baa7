import json

import numpy as np
import pytest

from hardyrep.cli import main
from hardyrep.io import format_complex, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    g4 = tmp_path / "gamma4.json"
    g4.write_text(json.dumps({"base": 4, "digits": [0, 1], "maxLevel": 8}))
    g3 = tmp_path / "gamma3.json"
    g3.write_text(json.dumps({"base": 3, "digits": [0, 1], "maxLevel": 9}))
    return tmp_path


def test_gamma_gen(capsys):
    code, out, _ = run(capsys, "gamma", "gen", "--base", "4", "--digits", "0,1", "--max-level", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["elements"] == [0, 1, 4, 5, 16, 17, 20, 21]
    assert rep["seed"] == 0


def test_cmc_lebesgue(capsys, files):
    code, out, _ = run(capsys, "check", "cmc", "--matrix", f"diag:{files / 'gamma4.json'}",
                       "--measure", "lebesgue", "--size", "64")
    rep = json.loads(out)
    assert code == 0 and rep["residual"] == 0 and rep["pass"] is True


def test_cmc_builder_measure_fails_for_gamma3(capsys, files):
    code, out, _ = run(capsys, "build", "measure", "--gamma", str(files / "gamma4.json"), "--freq-bound", "100")
    assert code == 0
    mu = files / "mu.json"
    mu.write_text(out)
    code, out, _ = run(capsys, "check", "cmc", "--matrix", f"diag:{files / 'gamma3.json'}",
                       "--measure", str(mu), "--size", "64")
    assert code == 1 and json.loads(out)["pass"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["gamma", "gen", "--base", "4", "--digits", "0,1"],
        ["gamma", "bogus"],
        ["check", "cmc", "--matrix", "diag:/nonexistent.json", "--measure", "lebesgue", "--size", "4"],
        ["check", "cmc", "--matrix", "szego", "--measure", "{not json", "--size", "4"],
        ["measure", "fourier", "--measure", "lebesgue", "--k", "x"],
        ["kernel", "eval", "--kernel", "k4", "--w", "1.5", "--z", "0"],
        ["kernel", "eval", "--kernel", "nosuch", "--w", "0", "--z", "0"],
        ["check", "cmc", "--matrix", "dense:{}", "--measure", "mu4", "--size", "2"],
        ["gamma", "gen", "--base", "4", "--digits", "0,1", "--max-level", "50"],
        ["check", "vanishing", "--measure", '{"type":"atomic","points":[0.1],"weights":[0.5]}',
         "--gamma", "g4:3", "--bound", "10"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_dense_singular_refused(capsys, tmp_path):
    p = tmp_path / "eye.csv"
    p.write_text("1+0i,0+0i\n0+0i,1+0i\n")
    code, _, err = run(capsys, "check", "cmc", "--matrix", f"dense:{p}", "--measure", "mu4", "--size", "2")
    assert code == 2 and "dense" in err


def test_measure_commands(capsys):
    code, out, _ = run(capsys, "measure", "fourier", "--measure", '{"type":"trig","b":{"3":0.4}}', "--k", "3", "--k", "-3")
    rep = json.loads(out)
    assert code == 0 and rep["coefficients"][0]["value"] == [0.2, 0.0]
    code, out, _ = run(capsys, "measure", "validate", "--measure", '{"type":"trig","b":{"2":1.2}}')
    assert code == 1 and json.loads(out)["ok"] is False
    code, out, _ = run(capsys, "measure", "validate", "--measure", "mu4")
    assert code == 0


def test_kernel_commands(capsys):
    code, out, _ = run(capsys, "kernel", "eval", "--kernel", "k4", "--w", "0.5", "--z", "0.5")
    rep = json.loads(out)
    assert code == 0 and abs(rep["value"][0] - 1.2548828127921752) < 1e-12
    code, out, _ = run(capsys, "kernel", "gram", "--kernel", "szego", "--random", "20", "--radius", "0.9")
    assert code == 0 and json.loads(out)["pass"] is True


def test_check_commands(capsys, files):
    code, out, _ = run(capsys, "check", "projection", "--matrix", "bergman", "--size", "4")
    assert code == 1 and json.loads(out)["residual"] == 12
    code, out, _ = run(capsys, "check", "vanishing", "--measure", "mu4", "--gamma", "g4:7", "--bound", "4096")
    assert code == 0
    code, out, _ = run(capsys, "check", "reproduce", "--matrix", "k4", "--measure", "mu4", "--random", "10",
                       "--radius", "0.8", "--size", "64")
    rep = json.loads(out)
    assert code == 0 and len(rep["samples"]) == 10
    code, out, _ = run(capsys, "check", "reproduce", "--matrix", "bergman", "--measure", "lebesgue",
                       "--w", "0.5", "--z", "0.5", "--size", "64")
    assert code == 1
    code, out, _ = run(capsys, "check", "reproduce", "--route", "quadrature", "--matrix", "k4",
                       "--measure", "lebesgue", "--w", "0.3", "--z", "0.5", "--size", "64", "--nodes", "256")
    assert code == 0
    code, out, _ = run(capsys, "check", "norms", "--measure", '{"type":"trig","b":{"2":0.4}}',
                       "--freqs", "1,3", "--coeffs", "1,1")
    assert code == 1 and abs(json.loads(out)["residual"] - 0.4) < 1e-12
    code, out, _ = run(capsys, "check", "transpose", "--matrix", "k4", "--measure", "lebesgue", "--size", "32")
    assert code == 0


def test_build_commands(capsys):
    code, out, _ = run(capsys, "build", "measure", "--gamma", "g3:9", "--freq-bound", "1000")
    assert code == 1 and "no admissible frequency" in json.loads(out)["error"]
    code, out, _ = run(capsys, "build", "certify", "--measure", '{"type":"trig","b":{"2":0.4}}',
                       "--gamma", "g3:4", "--window", "8")
    assert code == 1 and json.loads(out)["vanishing"]["worstOffset"] == 2


def test_determinism(capsys):
    argv = ["check", "reproduce", "--matrix", "k3", "--measure", "mu3", "--random", "5", "--seed", "42"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    assert json.loads(a)["seed"] == 42
    _, c, _ = run(capsys, *argv[:-1], "43")
    assert c != a


@pytest.mark.parametrize("fmt", ["csv", "table"])
def test_formats(capsys, fmt):
    code, out, _ = run(capsys, "gamma", "coverage", "--gamma", "g4:8", "--bound", "10", "--format", fmt)
    assert code == 0
    assert "firstMissing" in out and "2" in out


def test_out_file(capsys, tmp_path):
    path = tmp_path / "rep.json"
    code, out, _ = run(capsys, "gamma", "diff", "--gamma", "elements:0,1,4,5", "--bound", "10", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["differences"] == [-5, -4, -3, -1, 0, 1, 3, 4, 5]


def test_complex_literals():
    assert parse_complex("0.5-2e-1i") == 0.5 - 0.2j
    assert parse_complex("-i") == -1j
    assert parse_complex("3") == 3
    assert parse_complex("1e-3+4j") == 0.001 + 4j
    for z in (0.1 + 0.2j, -1e-300 - 5j, 3.0):
        assert parse_complex(format_complex(z)) == z
