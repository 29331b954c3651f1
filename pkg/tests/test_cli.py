import io
import subprocess
import sys

import pytest

from biquant.cli import main
from conftest import DATA


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue().splitlines()


def test_check_pass_and_fail():
    code, lines = run("check", str(DATA / "borel.json"))
    assert code == 0 and lines == ["PASS antisymmetry", "PASS jacobi", "PASS co-antisymmetry", "PASS co-jacobi", "PASS cocycle"]
    code, lines = run("check", str(DATA / "heisenberg_bad.json"))
    assert code == 1 and lines[-1] == "FAIL cocycle at (1, 2)"


def test_double():
    code, lines = run("double", str(DATA / "borel.json"))
    assert code == 0
    assert lines[0] == "{" and lines[-1] == "PASS t-invariance"
    assert "PASS sub-coalgebras" in lines


def test_bch():
    code, lines = run("bch", "--order", "3")
    assert code == 0
    assert lines == [
        "deg  coeff word",
        "1  1 X",
        "1  1 Y",
        "2  1/2 [X,Y]",
        "3  1/12 [X,[X,Y]]",
        "3  1/12 [[X,Y],Y]",
        "PASS re-expansion matches log(e^X e^Y) through degree 3",
    ]


def test_pair():
    code, lines = run("pair", str(DATA / "borel.json"), "--max-degree", "2", "--order", "2")
    assert code == 0
    assert lines[3] == "(0,1) | 0     | 0     | 1     | 0     | 1/2*v | 0"
    assert lines[-1] == "PASS nondegenerate at v = 0"


def test_quantize_and_biquant():
    code, lines = run("quantize", str(DATA / "borel.json"), "--order", "2")
    assert code == 0 and lines[0] == "J =" and sum(1 for x in lines if x.startswith("PASS")) == 7
    code, lines = run("biquant", str(DATA / "borel.json"), "--order", "2")
    assert code == 0 and lines[0] == "psi+(1,0) =" and lines[-1].startswith("PASS (vi)")


def test_oracle():
    code, lines = run("oracle", "--dim", "2", "--order", "2")
    assert code == 0 and lines[-1] == "all closed-form checks passed"


def test_errors(capsys, tmp_path):
    assert run("quantize", str(DATA / "borel.json"), "--order", "4")[0] == 2
    assert "only available through order 3" in capsys.readouterr().err
    assert run("pair", str(DATA / "borel.json"), "--max-degree", "3", "--order", "2")[0] == 2
    assert run("check", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("check", str(bad))[0] == 2
    assert run("quantize", str(DATA / "heisenberg_bad.json"))[0] == 2
    with pytest.raises(SystemExit):
        run("bch", "--order", "0")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "biquant", "bch", "--order", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "PASS re-expansion matches log(e^X e^Y) through degree 2"
