import json
import os
from pathlib import Path

import pytest

from operadkit.cli import run
from operadkit.expr import parse_tree
from operadkit.trees import Mode, Signature

DATA = Path(__file__).resolve().parent.parent / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(autouse=True)
def in_data_dir():
    prev = os.getcwd()
    os.chdir(DATA)
    yield
    os.chdir(prev)


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dim(capsys):
    assert cli(capsys, "dim", "--preset", "comm", "--arity", "3") == (0, "1\n", "")
    assert cli(capsys, "dim", "--preset", "lie", "--arity", "4")[1] == "6\n"


def test_member(capsys):
    assert cli(capsys, "member", "--preset", "assoc-planar", "--expr", "g(g(1,2),3) - g(1,g(2,3))") == (0, "true\n", "")
    assert cli(capsys, "member", "--preset", "assoc-planar", "--expr", "g(g(1,2),3)") == (1, "false\n", "")


def test_nf(capsys):
    code, out, _ = cli(capsys, "nf", "--preset", "assoc-planar", "--expr", "g(1,g(2,3))")
    assert code == 0
    code2, out2, _ = cli(capsys, "nf", "--preset", "assoc-planar", "--expr", "g(g(1,2),3)")
    assert out == out2
    assert cli(capsys, "nf", "--preset", "lie", "--expr", "b(1,2) + b(2,1)")[1] == "0\n"


def test_tqft_eval_closed_torus(capsys):
    assert cli(capsys, "tqft-eval", "--frobenius", "dualnumbers.json", "--word", "cup; copants; pants; cap") == (0, "2\n", "")


def test_tqft_eval_degenerate_is_a_failure(capsys):
    code, out, err = cli(capsys, "tqft-eval", "--frobenius", "dualnumbers_degenerate.json", "--word", "copants")
    assert code == 1 and out == "" and "nondegeneracy" in err


def test_frobenius_check(capsys):
    code, out, _ = cli(capsys, "frobenius-check", "--frobenius", "dualnumbers.json")
    assert code == 0 and out.endswith("PASS\n")
    code, out, _ = cli(capsys, "frobenius-check", "--frobenius", "dualnumbers_degenerate.json")
    assert code == 1 and "nondegeneracy: FAIL" in out


def test_enumerate_round_trip(capsys):
    code, out, _ = cli(capsys, "enumerate", "--generators", "g:2,h:3", "--mode", "symmetric", "--arity", "3")
    sig = Signature.monochrome({"g": 2, "h": 3}, Mode.SYMMETRIC)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 12 + 6
    assert [parse_tree(x, sig).key for x in lines] == lines
    assert lines == sorted(lines)


def test_enumerate_colored(capsys):
    code, out, _ = cli(capsys, "enumerate", "--generators", "f:2:a.b>c,u:1:c>a", "--arity", "2",
                       "--max-nodes", "2", "--color", "a")
    assert code == 0 and out.splitlines() == ["u(f(1@a,2@b))"]


def test_compose(capsys):
    base = ("compose", "--generators", "g:2")
    assert cli(capsys, *base, "--outer", "g(1,2)", "--inner", "g(1,2)", "1")[1] == "g(g(1,2),3)\n"
    assert cli(capsys, *base, "--outer", "g(1,2)", "--inner", "g(1,2)", "--at", "2")[1] == "g(1,g(2,3))\n"
    assert cli(capsys, *base, "--outer", "g(1,2)", "--inner", "1", "1", "--at", "1")[0] == 2


def test_check_algebra_failure_has_witness(capsys, tmp_path):
    doc = json.loads((DATA / "sl2.json").read_text())
    doc["generators"]["b"]["entries"][0][1] = "1"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = cli(capsys, "check-algebra", "--preset", "lie", "--rep", str(path))
    assert code == 1 and "FAIL (witness" in out and out.endswith("FAIL\n")


def test_linf_failure(capsys, tmp_path):
    doc = json.loads((DATA / "dgla.json").read_text())
    doc["brackets"]["1"][1]["value"] = {"b": "-1"}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = cli(capsys, "linf-check", "--data", str(path), "--up-to", "3")
    assert code == 1 and out.startswith("FAIL: relation 2 on (")


@pytest.mark.parametrize("argv,needle", [
    (["member", "--preset", "assoc-planar", "--expr", "g(g(1,2),3"], "line 1, column 11"),
    (["member", "--preset", "lie", "--expr", "g(1,2)"], "unknown generator 'g' (line 1, column 1)"),
    (["tqft-eval", "--frobenius", "dualnumbers.json", "--word", "pants; pants"], "layer 1"),
    (["tqft-eval", "--frobenius", "missing.json", "--word", "id"], "missing.json"),
    (["check-algebra", "--preset", "lie", "--rep", "dgla.json"], "dim"),
    (["enumerate", "--generators", "g:two", "--arity", "3"], "--generators"),
    (["enumerate", "--generators", "u:1", "--arity", "2"], "max"),
    (["dim", "--preset", "lie", "--arity", "9"], "exceeds"),
    (["dim", "--preset", "nope", "--arity", "3"], "invalid choice"),
])
def test_input_errors_exit_2(capsys, argv, needle):
    code, out, err = cli(capsys, *argv)
    assert code == 2 and out == ""
    assert needle in err


JSON_GOLDEN = {
    "dim_lie_4.json": ["dim", "--preset", "lie", "--arity", "4", "--json"],
    "member_assoc_planar.json": ["member", "--preset", "assoc-planar", "--expr", "g(g(1,2),3) - g(1,g(2,3))", "--json"],
    "check_algebra_lie_sl2.json": ["check-algebra", "--preset", "lie", "--rep", "sl2.json", "--json"],
    "tqft_eval_cylinder.json": ["tqft-eval", "--frobenius", "dualnumbers.json", "--word", "copants; pants", "--json"],
    "linf_check_dgla.json": ["linf-check", "--data", "dgla.json", "--up-to", "4", "--json"],
    "enumerate_g2_planar_4.json": ["enumerate", "--generators", "g:2", "--mode", "planar", "--arity", "4", "--json"],
    "frobenius_check_degenerate.json": ["frobenius-check", "--frobenius", "dualnumbers_degenerate.json", "--json"],
}


@pytest.mark.parametrize("name", sorted(JSON_GOLDEN))
def test_json_golden(capsys, name):
    _, out, _ = cli(capsys, *JSON_GOLDEN[name])
    json.loads(out)
    assert out == (GOLDEN / name).read_text(encoding="utf-8")
