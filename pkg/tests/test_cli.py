import json
import subprocess
import sys
from pathlib import Path

import pytest

from lcl.cli import main, read_theory
from lcl.formulas import parse_formula
from lcl.hilbert import check_proof, parse_proof
from lcl.simpletypes import parse_type
from lcl.terms import parse_term

GOLDEN = Path(__file__).parent / "data" / "golden.proof"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("LCL_FUEL", "LCL_ARITY", "LCL_DEPTH", "LCL_FORMAT"):
        monkeypatch.delenv(name, raising=False)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# ---------------------------------------------------------------- normalize

def test_normalize(capsys):
    assert run(capsys, "normalize", "S K K x")[:2] == (0, "x (2 steps)\n")
    assert run(capsys, "normalize", "x")[:2] == (0, "x (0 steps)\n")


def test_normalize_fuel_exhausted(capsys):
    code, out, _ = run(capsys, "normalize", "S I I (S I I)")
    assert code == 2 and out.startswith("FuelExhausted after 10000 steps")


def test_normalize_parse_error(capsys):
    code, out, err = run(capsys, "normalize", "S (K")
    assert code == 3 and out == "" and "error:" in err


# -------------------------------------------------------------------- infer

def test_infer(capsys):
    assert run(capsys, "infer", "", "K")[:2] == (0, "a -> (b -> a)\n")
    assert run(capsys, "infer", "", "S K K")[:2] == (0, "a -> a\n")
    assert run(capsys, "infer", "x : a -> b, y : a", "x y")[:2] == (0, "b\n")


def test_infer_untypable(capsys):
    code, out, _ = run(capsys, "infer", "", "x")
    assert code == 1 and out.startswith("Untypable")
    assert run(capsys, "infer", "", "S I I")[0] == 1


def test_infer_bad_basis(capsys):
    assert run(capsys, "infer", "x : ", "x")[0] == 3


# -------------------------------------------------------------- check-proof

def test_check_golden(capsys):
    code, out, _ = run(capsys, "check-proof", str(GOLDEN))
    assert code == 0 and out.splitlines()[0] == "Accepted"


def test_check_wrong_mp(tmp_path, capsys):
    text = GOLDEN.read_text().replace("MP 4 2", "MP 2 4")
    code, out, _ = run(capsys, "check-proof", write(tmp_path, "bad.proof", text))
    assert code == 1 and out.startswith("Rejected at line 5")


def test_check_inconclusive(tmp_path, capsys):
    path = write(tmp_path, "ax5.proof", "1. (S K K x : a) => (x : a) ; Ax5\n")
    code, out, _ = run(capsys, "check-proof", path, "--fuel", "1")
    assert code == 2 and out.startswith("Inconclusive")
    assert run(capsys, "check-proof", path)[0] == 0


def test_check_malformed_or_missing(tmp_path, capsys):
    assert run(capsys, "check-proof", write(tmp_path, "x.proof", "1. x : a"))[0] == 3
    assert run(capsys, "check-proof", str(tmp_path / "missing.proof"))[0] == 3


# ------------------------------------------------------------------- entail

def test_entail_proved_writes_checkable_proof(tmp_path, capsys):
    th = write(tmp_path, "t.txt", "# declarations\nx : s\n\n")
    out_path = tmp_path / "out.proof"
    code, out, _ = run(capsys, "entail", th, "K x y : s", "--proof-out", str(out_path))
    assert code == 0 and out.startswith("Proved")
    assert check_proof(parse_proof(out_path.read_text())).accepted
    assert run(capsys, "check-proof", str(out_path))[0] == 0


def test_entail_examples(tmp_path, capsys):
    empty = write(tmp_path, "empty.txt", "")
    code, out, _ = run(capsys, "entail", empty, "I : a -> a")
    assert code == 0 and "Ax3" in out
    code, out, _ = run(capsys, "entail", empty, "x : a")
    assert code == 1 and out.startswith("Refuted")
    assert run(capsys, "entail", empty, "S K K x : a", "--fuel", "1")[0] == 2


def test_entail_input_errors(tmp_path, capsys):
    empty = write(tmp_path, "empty.txt", "")
    assert run(capsys, "entail", empty, "x x : a")[0] == 3
    assert run(capsys, "entail", write(tmp_path, "bad.txt", "x :"), "x : a")[0] == 3


# ---------------------------------------------------------------- model-sat

def test_model_sat(tmp_path, capsys):
    m = write(tmp_path, "m.model", "x : s\n")
    code, out, _ = run(capsys, "model-sat", m, "(x : s) => (K x y : s)")
    assert code == 0 and out.splitlines()[0] == "True"
    empty = write(tmp_path, "e.model", "")
    assert run(capsys, "model-sat", empty, "x : a")[:2] == (1, "False\n  x : a: False\n")
    assert run(capsys, "model-sat", empty, "I : a -> a")[0] == 0
    assert run(capsys, "model-sat", empty, "x x : a")[0] == 3


def test_consistent(tmp_path, capsys):
    assert run(capsys, "consistent", write(tmp_path, "a.txt", "x : a\n~(x : a)\n"))[:2] == (1, "False\n")
    assert run(capsys, "consistent", write(tmp_path, "b.txt", "x : a\n"))[:2] == (0, "True\n")


# ---------------------------------------------------------- shared contract

CASES = [
    ("normalize", "S K K x"),
    ("normalize", "S I I (S I I)"),
    ("infer", "", "K"),
    ("infer", "", "x"),
    ("check-proof", str(GOLDEN)),
]


@pytest.mark.parametrize("argv", CASES)
def test_json_and_text_verdicts_agree(argv, capsys):
    code_text, _, _ = run(capsys, *argv)
    code_json, out, _ = run(capsys, "--format", "json", *argv)
    assert code_text == code_json
    json.loads(out)


def test_json_entail_and_model(tmp_path, capsys):
    th = write(tmp_path, "t.txt", "x : s\n")
    code, out, _ = run(capsys, "entail", th, "K x y : s", "--format", "json")
    j = json.loads(out)
    assert code == 0 and j["status"] == "Proved"
    assert check_proof(parse_proof(j["proof"])).accepted
    m = write(tmp_path, "m.model", "x : s\n")
    code, out, _ = run(capsys, "model-sat", m, "y : s", "--format", "json")
    assert code == 1 and json.loads(out)["value"] is False


def test_env_fallback_and_flag_precedence(monkeypatch, capsys):
    monkeypatch.setenv("LCL_FUEL", "5")
    assert run(capsys, "normalize", "S I I (S I I)")[1].startswith("FuelExhausted after 5 steps")
    assert run(capsys, "--fuel", "7", "normalize", "S I I (S I I)")[1].startswith(
        "FuelExhausted after 7 steps")
    assert run(capsys, "normalize", "S I I (S I I)", "--fuel", "9")[1].startswith(
        "FuelExhausted after 9 steps")
    monkeypatch.setenv("LCL_FORMAT", "json")
    assert json.loads(run(capsys, "normalize", "x")[1])["term"] == "x"
    monkeypatch.setenv("LCL_FORMAT", "xml")
    assert run(capsys, "normalize", "x")[0] == 3
    monkeypatch.setenv("LCL_FORMAT", "text")
    monkeypatch.setenv("LCL_FUEL", "lots")
    assert run(capsys, "normalize", "x")[0] == 3


def test_usage_errors(capsys):
    assert main([]) == 3
    assert main(["frobnicate"]) == 3
    assert main(["normalize", "x", "--fuel", "-2"]) == 3


def test_printed_output_reparses(tmp_path, capsys):
    _, out, _ = run(capsys, "normalize", "S (K x) I y")
    assert str(parse_term(out.rsplit(" (", 1)[0])) == out.rsplit(" (", 1)[0]
    _, out, _ = run(capsys, "infer", "", "S")
    assert str(parse_type(out.strip())) == out.strip()
    th = write(tmp_path, "t.txt", "x : s\n")
    _, out, _ = run(capsys, "entail", th, "K x y : s")
    text = out.split("\n", 1)[1]
    assert str(parse_proof(text)) == text


def test_read_theory_comments():
    assert read_theory("# c\nx : a  # trailing\n\n~(y : b)\n") == [
        parse_formula("x : a"), parse_formula("~(y : b)")]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lcl", "normalize", "S K K x"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "x (2 steps)\n"
