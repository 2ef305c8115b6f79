import json
import subprocess
import sys

import pytest

from toriczeta.cli import EXIT_FAILED, EXIT_INVALID, EXIT_OK, EXIT_TOO_LARGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_analyze_json(capsys):
    code, out = run(capsys, "analyze", "--p", "3", "--q", "7", "--jets", "3", "--format", "json")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["continued_fractions"] == {"resolution": [2, 4], "embedding": [3, 2, 2]}
    assert rep["coefficients"][1] == [{"e": 5, "c": 1}]
    assert rep["recovery"]["roundtrip_ok"]
    assert rep["verification"]["passed"]
    assert {p["d"] for p in rep["poles"]} == {"-3", "-8/3", "-5/2"}


def test_analyze_is_deterministic(capsys):
    _, a = run(capsys, "analyze", "--p", "2", "--q", "7", "--format", "json")
    _, b = run(capsys, "analyze", "--p", "2", "--q", "7", "--format", "json")
    assert a == b


def test_analyze_text(capsys):
    code, out = run(capsys, "analyze", "--p", "1", "--q", "2", "--jets", "2")
    assert code == EXIT_OK
    assert "T^1: L^3" in out


@pytest.mark.parametrize("argv", [
    ["analyze", "--p", "2", "--q", "4"],
    ["analyze", "--p", "1", "--q", "2", "--jets", "99"],
    ["verify", "--p", "1", "--q", "2", "--field", "6"],
    ["verify", "--p", "1", "--q", "2", "--field", "11"],
    ["recover", "--p", "0", "--q", "5"],
    ["analyze", "--p", "x", "--q", "5"],
    ["frobnicate"],
])
def test_invalid_input(capsys, argv):
    assert main(argv) == EXIT_INVALID
    capsys.readouterr()


@pytest.mark.parametrize("pq,order", [((1, 2), 3), ((3, 7), 2)])
def test_verify_passes(capsys, pq, order):
    code, out = run(capsys, "verify", "--p", str(pq[0]), "--q", str(pq[1]), "--order", str(order),
                    "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["passed"]


def test_verify_too_large(capsys):
    assert main(["verify", "--p", "3", "--q", "7", "--order", "12"]) == EXIT_TOO_LARGE
    assert "above the limit" in capsys.readouterr().err


@pytest.mark.parametrize("check", ["class", "chi", "star"])
def test_counterexample(capsys, check):
    code, out = run(capsys, "counterexample", "--check", check, "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["pass"]


def test_recover(capsys):
    code, out = run(capsys, "recover", "--p", "5", "--q", "18", "--format", "json")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["recovery"]["recovered"]["c"] == sorted(rep["recovery"]["forward"]["c"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toriczeta", "recover", "--p", "3", "--q", "8"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "roundtrip_ok=True" in proc.stdout


def test_exit_codes_distinct():
    assert len({EXIT_OK, EXIT_INVALID, EXIT_FAILED, EXIT_TOO_LARGE}) == 4
