import json
import subprocess
import sys

import pytest

from laft.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_transform(capsys):
    assert call(capsys, "transform", "--kind", "0-inf", "--f", "-4*z^-1") == (
        0, "-2*zetahat^(-1/2) + 1/4", "")


def test_transform_json(capsys):
    code, out, _ = call(capsys, "transform", "--kind", "0-inf", "--f", "-4*z^-1",
                        "--jordan", "2", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["ramification"] == 2 and data["slope"] == "1/2" and data["jordan"] == 2


def test_transform_inf_inf(capsys):
    assert call(capsys, "transform", "--kind", "inf-inf", "--f", "3*zeta^-2")[:2] == (
        0, "-1/3*zetahat^-2")


def test_slope_violation(capsys):
    code, out, err = call(capsys, "transform", "--kind", "inf-0", "--f", "zeta^(-3/2)")
    assert code == 2 and not out and err.startswith("SlopeViolation:")


def test_root_hint(capsys):
    code, _, err = call(capsys, "transform", "--kind", "0-inf", "--f", "4*z^-1")
    assert code == 2 and "RootUnavailable" in err and "--backend complex" in err


def test_complex_backend(capsys):
    code, out, _ = call(capsys, "transform", "--kind", "0-inf", "--f", "4*z^-1",
                        "--backend", "complex", "--prec", "64")
    assert code == 0 and "zetahat^(-1/2)" in out


def test_syntax_error(capsys):
    code, _, err = call(capsys, "transform", "--kind", "0-inf", "--f", "z^^2")
    assert code == 1 and err.startswith("ExprSyntaxError")


def test_usage_error(capsys):
    code, _, err = call(capsys, "transform", "--kind", "sideways", "--f", "z")
    assert code == 1 and "invalid choice" in err


def test_normalize(capsys):
    assert call(capsys, "normalize", "--f", "z^-1 + 7/3 + 5*z", "--q", "2")[:2] == (
        0, "z^-1 + 1/3")


def test_invert(capsys):
    code, out, _ = call(capsys, "invert", "--f", "z + z^2", "--order", "4")
    assert code == 0 and out == "z - z^2 + 2*z^3 - 5*z^4"


@pytest.mark.parametrize("suite", ["lagrange", "constant", "slopes"])
def test_verify(capsys, suite):
    code, out, _ = call(capsys, "verify", "--suite", suite, "--trials", "5", "--seed", "3")
    head = out.splitlines()[0]
    passed, total = head.split(": ")[1].split()[0].split("/")
    assert code == 0 and head.startswith(suite) and passed == total


def test_verify_deterministic(capsys):
    first = call(capsys, "verify", "--suite", "constant", "--trials", "4", "--seed", "11")
    assert call(capsys, "verify", "--suite", "constant", "--trials", "4", "--seed", "11") == first


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "laft", "transform", "--kind", "0-inf", "--f", "-4*z^-1"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0 and out.stdout.strip() == "-2*zetahat^(-1/2) + 1/4"
