import io
import json
import subprocess
import sys

import jsonschema
import pytest

from superstar import cli, quantization

SCHEMA = {
    "type": "object",
    "required": ["ok", "result", "signature", "hbar_order"],
    "additionalProperties": False,
    "properties": {
        "ok": {"type": "boolean"},
        "result": {"type": "string"},
        "hbar_order": {"type": "integer"},
        "signature": {
            "type": "object",
            "required": ["n", "a", "b", "eps"],
            "additionalProperties": False,
            "properties": {
                "n": {"type": "integer", "minimum": 0},
                "a": {"type": "integer", "minimum": 0},
                "b": {"type": "integer", "minimum": 0},
                "eps": {"type": "array", "items": {"enum": [1, -1]}},
            },
        },
    },
}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_star():
    assert run("star", "--sig", "1,1,1", "p1", "q1") == (0, "p1*q1 + 1/2*h\n", "")


def test_bracket():
    assert run("bracket", "--sig", "1,1,1", "p1", "q1")[:2] == (0, "1\n")
    assert run("bracket", "--sig", "1,1,1", "t1", "t1")[1] == "-1\n"
    assert run("bracket", "--sig", "1,1,1", "--eps=-,+", "t1", "t1")[1] == "1\n"


def test_commutator_and_normal_order():
    assert run("commutator", "--sig", "1,1,1", "p1", "q1")[1] == "h\n"
    assert run("normal-order", "--sig", "1,1,1", "q1*p1")[1] == "p1*q1 + -1/2*h\n"
    assert run("normal-order", "--sig", "1,1,1", "t2 t2")[1] == "1/2*h\n"


def test_jet():
    assert run("jet", "--sig", "1,2,0", "t1*t2")[1] == "t1*t2 + t1*T2 + -1*t2*T1 + T1*T2\n"
    assert run("jet", "--sig", "1,0,0", "p1^2", "--order", "1")[1] == "p1^2 + 2*p1*P1\n"


@pytest.mark.parametrize("argv", [
    ("star", "--sig", "1,1,1", "p1", "q1"),
    ("bracket", "--sig", "2,1,1", "p1*t1", "q1*t1"),
    ("normal-order", "--sig", "1,1,1", "q1*p1*t1*t1"),
    ("jet", "--sig", "1,1,1", "p1*t1"),
    ("check", "--sig", "1,1,0", "--cases", "5"),
])
def test_json_schema(argv):
    code, out, _ = run(*argv, "--json")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    assert payload["ok"] is True


def test_json_fields():
    payload = json.loads(run("star", "--sig", "1,1,1", "p1^2", "q1^2", "--json")[1])
    assert payload["hbar_order"] == 2
    assert payload["signature"] == {"n": 1, "a": 1, "b": 1, "eps": [1, -1]}


def test_deterministic():
    argv = ("star", "--sig", "2,1,1", "p1*q2 + t1 - 3/2*p2", "q1^2*t2 + p2*t1", "--json")
    assert len({run(*argv)[1] for _ in range(3)}) == 1


def test_member(tmp_path):
    shear = tmp_path / "shear.json"
    shear.write_text(json.dumps({"A": [[1, 1], [0, 1]]}))
    assert run("member", "--sig", "1,0,0", str(shear))[:2] == (0, "true\n")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"A": [[1, 1], ["1/2", 1]]}))
    assert run("member", "--sig", "1,0,0", str(bad))[1] == "false\n"
    boost = tmp_path / "boost.json"
    boost.write_text(json.dumps({"D": [["5/4", "3/4"], ["3/4", "5/4"]]}))
    assert run("member", "--sig", "0,1,1", str(boost))[1] == "true\n"
    lie = tmp_path / "lie.json"
    lie.write_text(json.dumps({"A": [[0, 1], [0, 0]]}))
    assert run("member", "--sig", "1,0,0", "--lie", str(lie))[1] == "true\n"


def test_act(tmp_path):
    shear = tmp_path / "shear.json"
    shear.write_text(json.dumps({"A": [[1, 1], [0, 1]]}))
    assert run("act", "--sig", "1,0,0", str(shear), "q1")[1] == "p1 + q1\n"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"A": [[1, 1], [1, 1]]}))
    assert run("act", "--sig", "1,0,0", str(bad), "q1")[0] == cli.EXIT_MATH


def test_odd_block_parity_violation(tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"B": [[1], [0]]}))
    assert run("member", "--sig", "1,1,0", str(m))[0] == cli.EXIT_MATH
    m.write_text(json.dumps({"B": [["p1"], [0]]}))
    assert run("member", "--sig", "1,1,0", str(m))[0] == cli.EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ("star", "--sig", "1,1,1", "p1 +", "q1"),
    ("star", "--sig", "1,1", "p1", "q1"),
    ("star", "--sig", "1,1,1", "p3", "q1"),
    ("bracket", "--sig", "1,1,1", "--eps", "+,?", "t1", "t1"),
    ("normal-order", "--sig", "1,1,1", "x1"),
    ("member", "--sig", "1,0,0", "/nonexistent.json"),
    ("frobnicate",),
    (),
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == cli.EXIT_USAGE and out == "" and err.startswith("superstar:")


def test_check_passes():
    code, out, _ = run("check", "--sig", "1,1,1", "--degree", "3", "--cases", "20")
    assert code == 0
    assert out.strip().splitlines()[-1] == "22/22 checks passed"


def test_check_detects_broken_star(monkeypatch):
    real = quantization.star

    def broken(ctx, f, g):
        out = real(ctx, f, g)
        return out - out.hbar_coefficient(2).times_hbar(2)

    monkeypatch.setattr(quantization, "star", broken)
    code, out, _ = run("check", "--sig", "1,1,1", "--cases", "20")
    assert code == cli.EXIT_CHECK
    assert "[FAIL] star: associativity" in out


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "superstar.cli", "star", "--sig", "1,1,1", "p1", "q1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "p1*q1 + 1/2*h\n"
