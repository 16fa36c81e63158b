import json
import subprocess
import sys
from fractions import Fraction

import pytest

from qwhittaker.cli import main
from qwhittaker.corealg import LaurentPoly, QLaurent, QRatio
from qwhittaker.corealg.laurent import var
from qwhittaker.serialize import from_obj

q = QLaurent.q(1)


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_whittaker_point(capsys):
    status, out, _ = run(capsys, "whittaker", "--rank", "2", "--point", "1,0")
    assert status == 0
    value = from_obj(json.loads(out))
    assert value == (var(0, 2) + var(1, 2)) * QRatio(1, 1 - q)


@pytest.mark.parametrize("route", ["gz", "recursive", "macdonald", "demazure", "torus"])
def test_whittaker_routes_agree(capsys, route):
    argv = ["whittaker", "--rank", "3", "--point", "2,1,0", "--normalized", "--route", route]
    status, out, _ = run(capsys, *argv)
    assert status == 0
    gz = run(capsys, "whittaker", "--rank", "3", "--point", "2,1,0", "--normalized")[1]
    assert out == gz


def test_macdonald_numeric(capsys):
    status, out, _ = run(capsys, "macdonald", "--rank", "2", "--lambda", "2,0", "--q", "1/2", "--t", "1/3")
    assert status == 0
    obj = json.loads(out)
    assert obj["vars"] == ["x1", "x2"]
    x1, x2 = var(0, 2), var(1, 2)
    assert from_obj(obj) == x1 ** 2 + x2 ** 2 + (x1 * x2) * Fraction(6, 5)
    expected = '{"vars":["x1","x2"],"terms":[{"exp":[2,0],"coeff":{"s_terms":[[0,1,1]]}},' \
               '{"exp":[1,1],"coeff":{"s_terms":[[0,6,5]]}},{"exp":[0,2],"coeff":{"s_terms":[[0,1,1]]}}]}'
    assert out.strip() == expected


def test_macdonald_symbolic(capsys):
    status, out, _ = run(capsys, "macdonald", "--rank", "2", "--lambda", "1,-1", "--t", "0")
    assert status == 0
    assert from_obj(json.loads(out)) == (var(0, 2) * var(1, 2) ** -1 + var(1, 2) * var(0, 2) ** -1) \
        + LaurentPoly.constant(2, 1 + q)
    assert run(capsys, "macdonald", "--rank", "2", "--lambda", "1,0", "--k", "1")[0] == 0


def test_demazure_payload(capsys):
    status, out, _ = run(capsys, "demazure", "--rank", "2", "--point", "1,-1")
    assert status == 0
    obj = json.loads(out)
    assert (obj["k"], obj["i"], obj["word"], obj["degree"]) == (0, 0, [1, 0], "-1")


def test_torus(capsys):
    status, out, _ = run(capsys, "torus", "--rank", "2", "--point", "1,0")
    assert status == 0
    assert from_obj(json.loads(out)) == var(0, 2) + var(1, 2)


@pytest.mark.parametrize("argv", [
    ["macdonald", "--rank", "2", "--lambda", "0,2", "--q", "1/2", "--t", "1/3"],
    ["whittaker", "--rank", "5", "--point", "1,0,0,0,0"],
    ["whittaker", "--rank", "2", "--point", "9,0"],
    ["whittaker", "--rank", "2", "--point", "1,0,0"],
    ["macdonald", "--rank", "2", "--lambda", "2,0", "--q", "1/2"],
    ["macdonald", "--rank", "2", "--lambda", "2,0", "--t", "1/2"],
    ["torus", "--rank", "2", "--point", "1,-1"],
    ["verify", "--rank", "2", "--box", "3..1"],
    ["nonsense"],
])
def test_invalid_input_exits_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_pole_in_specialization_exits_2(capsys):
    # t = 1 makes every power-sum norm singular
    argv = ["macdonald", "--rank", "2", "--lambda", "2,0", "--q", "1/2", "--t", "1"]
    assert run(capsys, *argv)[0] == 2


def test_verify_pass_and_fail(capsys):
    status, out, err = run(capsys, "verify", "--rank", "2", "--suite", "eiglat", "--box", "0..3")
    assert status == 0
    assert json.loads(out)["status"] == "pass"
    assert "eiglat.eigen" in err
    status, out, _ = run(capsys, "verify", "--rank", "2", "--suite", "corSan")
    assert status == 1
    report = json.loads(out)["reports"][0]
    failing = [c for c in report["checks"] if c["status"] == "fail"]
    assert [c["name"] for c in failing] == ["corSan.literal"]
    assert set(failing[0]["counterexample"]) == {"inputs", "lhs", "rhs"}


def test_verify_negative_box(capsys):
    status, out, _ = run(capsys, "verify", "--rank", "2", "--suite", "eiglat", "--box=-2..2")
    assert status == 0
    assert json.loads(out)["reports"][0]["box"] == [-2, 2]


def test_text_format(capsys):
    status, out, _ = run(capsys, "verify", "--rank", "2", "--suite", "noncomm", "--format", "text")
    assert status == 0
    assert out.splitlines()[0] == "suite noncomm rank 2 box 0..3"
    assert "all pass" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "psi.json"
    status, out, _ = run(capsys, "torus", "--rank", "2", "--point", "2,0", "--out", str(target))
    assert status == 0 and out == ""
    assert from_obj(json.loads(target.read_text())) == var(0, 2) ** 2 + var(1, 2) ** 2 + (var(0, 2) * var(1, 2)).scale(1 + q)


def test_byte_identical_across_processes():
    argv = [sys.executable, "-m", "qwhittaker", "verify", "--rank", "2", "--suite", "all", "--box", "0..2"]
    first = subprocess.run(argv, capture_output=True, check=False)
    second = subprocess.run(argv, capture_output=True, check=False)
    assert first.returncode == second.returncode == 1
    assert first.stdout == second.stdout
