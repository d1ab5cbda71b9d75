import io
import json
import subprocess
import sys

import pytest

from chevkit.cli import DEFAULT_SEED, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv) + ["--format", "json"], out)
    text = out.getvalue().strip()
    return code, (json.loads(text) if text else None)


def test_text_mode_prints_seed():
    out = io.StringIO()
    assert main(["rootsys", "--type", "E7"], out) == 0
    assert out.getvalue().splitlines()[0] == "seed: %d" % DEFAULT_SEED


def test_rootsys_and_psi():
    code, rec = run("rootsys", "--type", "E7", "--psi", "1,3,4,6")
    assert code == 0
    assert rec["highest_root"] == "2234321" and rec["longest_length"] == 63
    assert rec["psi"]["type"] == "D4" and rec["psi"]["positive"] == 12


def test_weyl():
    code, rec = run("weyl", "--type", "E7", "--word", "1 1 2", "--longest", "2,3,4,5")
    assert code == 0 and rec["length"] == 1 and rec["longest_length"] == 12


def test_bruhat_and_conjugate():
    code, rec = run("bruhat", "--type", "E7", "s[1] s[1]")
    assert code == 0 and rec["cell"] == "e"
    code, rec = run("bruhat", "--type", "A3", "--field", "f2", "s[1] s[1]")
    assert rec["normal_form"] == "1" or rec["length"] == 0
    code, rec = run("conjugate", "--type", "A3", "x[(111)](1)", "s[1]")
    assert code == 0 and rec["cell"] == "e"


def test_d4_classify():
    code, rec = run("d4", "--params", "1,2,3,1,1,1,1", "--classify", "--field", "f7")
    assert code == 0 and rec["charpoly_matches"]
    assert rec["classification"]["class"] in ("(1)", "(2)", "(3)", "(4)", "no fixed chamber")


def test_polar_constructions():
    code, rec = run("polar", "--n", "3", "--q", "2", "--exhaustive")
    assert code == 0
    code, rec = run("polar", "--n", "2", "--q", "4", "--construct", "baer")
    assert code == 0


def test_algebra_and_thin():
    code, rec = run("algebra", "--check", "e6", "--samples", "20")
    assert code == 0
    code, rec = run("thin", "--gosset", "--count-symps")
    assert code == 0 and rec["symps"] == 126


def test_spectrum_example():
    code, rec = run("spectrum", "--type", "A3", "--q", "2", "--theta", "x[(111)](1)")
    assert code == 0
    assert rec["domestic"] is True and rec["circled"] == [1, 3] and rec["chambers"] == 315


def test_verify_exit_codes():
    code, rec = run("verify", "--checks", "a,b")
    assert code == 0
    code, rec = run("verify", "--checks", "i")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["bogus"], ["spectrum", "--type", "E7", "--q", "2", "--theta", "1"],
    ["bruhat", "--type", "E7", "x[(9999999)](1)"], ["d4", "--params", "1,2"]])
def test_usage_errors(argv):
    try:
        code = main(argv, io.StringIO())
    except SystemExit as e:
        code = e.code
    assert code == 4


def test_budget_exit(monkeypatch):
    monkeypatch.setenv("CHEVKIT_BUDGET", "10")
    assert main(["spectrum", "--type", "A3", "--q", "2", "--theta", "1"], io.StringIO()) == 3


def test_console_script():
    p = subprocess.run([sys.executable, "-m", "chevkit.cli", "thin", "--count-symps"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "symps: 126" in p.stdout
