import json
import subprocess
import sys
from io import StringIO

import pytest

from hessarr.cli import run


def call(*argv):
    out = StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--format", "json")
    return code, json.loads(text)


def test_presentation_of_example():
    code, data = call_json("presentation", "--family", "B", "--rank", "3", "--hess", "3,5,4")
    assert code == 0 and data["schema"] == 1
    rec = data["results"][0]
    assert rec["degrees"] == [3, 4, 2]
    assert rec["hessenberg"] == [3, 5, 4]
    assert rec["generators"][2] == "x1^2 + x2^2 + x3^2"


def test_volume_in_simple_roots():
    code, data = call_json("volume", "--family", "A", "--rank", "2", "--roots", "a1,a2")
    assert code == 0
    assert data["results"][0]["simple_roots"] == "a1^2 + 4 * a1*a2 + a2^2"


def test_ann_check_with_extra_polynomials():
    code, data = call_json(
        "ann-check", "--family", "A", "--rank", "2", "--roots", "x1-x2,x2-x3",
        "--kill", "a1^2 - a2^2", "--kill", "2 * a1^2 + a1*a2",
    )
    assert code == 0 and data["passed"]
    assert data["results"][0]["extra_killed"] == [True, True]


def test_ann_check_failing_polynomial_exits_one():
    code, _ = call("ann-check", "--family", "A", "--rank", "2", "--roots", "a1,a2", "--kill", "a1^2")
    assert code == 1


@pytest.mark.parametrize("cmd", ["exponents", "poincare", "hilbert", "saito-check", "chambers", "weyl-type", "lefschetz"])
def test_commands_pass_on_b2(cmd):
    code, data = call_json(cmd, "--family", "B", "--rank", "2", "--ideal", "all")
    assert code == 0 and data["passed"]
    assert len(data["results"]) == 6


def test_exponents_of_empty_ideal():
    code, data = call_json("exponents", "--family", "G", "--rank", "2", "--roots", "")
    assert code == 0 and data["results"][0]["exponents"] == [0, 0]


def test_gkm_dims_rank_two():
    code, data = call_json("gkm-dims", "--family", "G", "--rank", "2", "--ideal", "full", "--max-degree", "2")
    assert code == 0
    rows = data["results"][0]["degrees"]
    assert [r["gkm_dim"] for r in rows] == [r["free_module"] for r in rows]
    assert all(r["invariant_dim"] == r["quotient_dim"] for r in rows)


def test_gkm_dot_format():
    code, text = call("gkm-dot", "--family", "A", "--rank", "2", "--roots", "a1,a2", "--format", "dot")
    assert code == 0 and text.startswith("graph gkm {")


def test_verify_all_a2_and_d3():
    code, text = call("verify-all", "--family", "A", "--rank", "2", "--ideal", "all")
    assert code == 0 and "5 ideals verified: pass" in text
    code, data = call_json("verify-all", "--family", "D", "--rank", "3", "--ideal", "full")
    assert code == 0 and data["passed"]
    assert "saito" not in data["results"][0]["checks"]


def test_roots_dump():
    code, text = call("roots", "--family", "C", "--rank", "2")
    data = json.loads(text)
    assert code == 0 and data["schema"] == 1 and len(data["roots"]) == 4


@pytest.mark.parametrize(
    "argv",
    [
        ["exponents", "--family", "B", "--rank", "3", "--hess", "4,3,4"],
        ["exponents", "--family", "A", "--rank", "2", "--roots", "x1-x3"],
        ["exponents", "--family", "A", "--rank", "2", "--roots", "x1+x2"],
        ["saito-check", "--family", "D", "--rank", "3"],
        ["exponents", "--family", "A", "--rank", "2", "--hess", "2,3,3", "--ideal", "full"],
        ["hilbert", "--family", "A", "--rank", "2", "--format", "dot"],
        ["poincare", "--family", "B", "--rank", "3", "--max-weyl", "10"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    assert run(argv, out=StringIO()) == 2
    assert "error" in capsys.readouterr().err


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        run(["nonsense", "--family", "A", "--rank", "2"], out=StringIO())
    assert exc.value.code == 2


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "hessarr.cli", "exponents", "--family", "A", "--rank", "3", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"][0]["exponents"] == [1, 2, 3]
