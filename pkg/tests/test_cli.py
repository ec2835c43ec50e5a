import subprocess
import sys

import pytest

from z3super.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["normalize", "--preset", "superspace", "y*x"], "q^2*x*y"),
        (["d", "--times", "3", "x*y*th"], "0"),
        (["pair", "X*Y", "x^2*y"], "3"),
        (["d", "x*y"], "dx*y + q^2*dy*x"),
        (["grade", "x*y*th"], "0"),
        (["counit", "x^3"], "1"),
        (["antipode", "x*y"], "-q*xinv^2*y"),
        (["coproduct", "x"], "x (x) x"),
        (["normalize", "x*(x)*y"], "x (x) y"),
        (["normalize", "--preset", "extended", "x*xinv"], "1"),
    ],
)
def test_subcommands(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.strip() == expected


def test_partials_output(capsys):
    code, out, _ = run(capsys, "partials", "x*y")
    assert code == 0
    assert out.splitlines() == ["px: y", "py: q^2*x", "pth: 0"]


@pytest.mark.parametrize(
    "argv",
    [
        ["normalize", "x y"],
        ["normalize", "--preset", "superspace", "dx"],
        ["check", "nope"],
        ["grade", "x + y"],
        [],
        ["preset", "export", "nope", "/tmp/never"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_check_pass_and_machine_format(capsys):
    code, out, err = run(capsys, "check", "rmatrix", "--format", "machine")
    assert code == 0
    first = out.splitlines()[0].split("\t")
    assert first[0] == "rmatrix" and first[2] == "PASS"
    assert "elapsed" in err


def test_check_failure_exit_1(capsys):
    code, out, _ = run(capsys, "check", "forms")
    assert code == 1
    assert "FAIL" in out


def test_output_is_deterministic(capsys):
    a = run(capsys, "check", "scalar")[1]
    b = run(capsys, "check", "scalar")[1]
    assert a == b


def test_preset_export_load(capsys, tmp_path):
    f = tmp_path / "dual.txt"
    assert run(capsys, "preset", "export", "dual-superspace", str(f))[0] == 0
    code, out, _ = run(capsys, "preset", "load", str(f))
    assert code == 0 and "0 confluence mismatches" in out


def test_rmatrix_export_load(capsys, tmp_path):
    f = tmp_path / "r.txt"
    assert run(capsys, "rmatrix", "--export", str(f))[0] == 0
    code, out, _ = run(capsys, "rmatrix", "--load", str(f), "--braid")
    assert code == 0 and "braid residual: zero" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "z3super.cli", "normalize", "th*y"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "q*y*th"
