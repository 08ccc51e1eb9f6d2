import io
import json
from pathlib import Path

import jsonschema
import pytest

from idemdim import cli, harness
from idemdim.harness import VerificationReport

ROOT = Path(__file__).parents[1]
SCHEMA = json.loads((ROOT / "docs" / "report-schema.json").read_text())
T3 = str(ROOT / "corpus" / "t3.json")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, text, err = run(*argv, "--format", "json")
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    assert doc["exit"] == code
    return code, doc


def test_member_example():
    code, text, _ = run("member", "--ring", "b,laurent,2", "--cong", "weight[[1,0]]", "(x+y, x)")
    assert (code, text) == (0, "member: true\n")
    code, text, _ = run("member", "--ring", "b,laurent,2", "--cong", "weight[[1,0];[0,1]]", "(x*y + x, x)")
    assert (code, text) == (0, "member: false\n")


def test_dim_example():
    code, text, _ = run("dim", "--table", T3)
    assert code == 0 and text.splitlines()[0] == "dim = 0"
    code, text, _ = run("dim", "--ring", "zmax")
    assert text.splitlines()[0] == "dim = 1"
    code, text, _ = run("dim", "--ring", "lex2")
    assert text.splitlines()[0] == "dim = 2"


def test_verify_example():
    code, text, _ = run("verify", "dplusone", "--base", "zmax", "--mode", "laurent")
    lines = text.splitlines()
    assert code == 0 and lines[-1] == "PASS dim = 2"
    assert any("witness" in line for line in lines)


def test_eval_and_leq():
    assert run("eval", "--ring", "b,poly,2", "x + y^2 * x") == (0, "x*y^2 + x\n", "")
    assert run("eval", "--ring", "zmax,laurent", "3*x^-1 + -inf") == (0, "3*x^-1\n", "")
    assert run("eval", "--ring", "zmax,poly", "x + 5", "--assign", "x=0")[1] == "5\n"
    assert run("leq", "--ring", "b,poly", "x", "x + 1")[1] == "leq: true\n"
    assert run("leq", "--ring", "b,poly", "x", "1")[1] == "leq: false\n"


def test_kernel_and_deciders():
    assert run("kernel", "--ring", "b,poly", "--cong", "evalpull(x=0; trivial)", "x")[1] == "kernel: true\n"
    code, text, _ = run("is-prime", "--table", "t3", "--cong", "gen[(1,a)]")
    assert code == 0 and text == "prime: true\n"
    code, text, _ = run("is-prime", "--table", "bxb", "--cong", "trivial")
    assert text.startswith("prime: false\nwitness: alpha = ")
    code, text, _ = run("is-qc", "--table", "b", "--cong", "trivial")
    assert text == "qc: true\n"
    code, text, _ = run("is-irreducible", "--table", "bxb", "--cong", "trivial")
    assert text.startswith("irreducible: false\nwitness: ")
    code, text, _ = run("is-prime", "--ring", "b,laurent,2", "--cong", "weight[[1,0]]")
    assert text == "prime: true (family contract)\n"
    code, text, _ = run("is-qc", "--ring", "b,laurent,2", "--cong", "iqc(4)")
    assert text == "qc: true (family contract)\n"


def test_congruences_listing():
    code, text, _ = run("congruences", "--table", "t3")
    lines = text.splitlines()
    assert code == 0 and lines[-1] == "total: 3"
    assert sum("prime" in line for line in lines) == 1


def test_chain():
    code, text, _ = run("chain", "--ring", "b,laurent,2")
    assert code == 0 and text.splitlines()[-1] == "PASS length = 2"


@pytest.mark.parametrize(
    "argv",
    [
        ("eval", "--ring", "b,poly", "x + "),
        ("eval", "--ring", "b,poly", "x^-1"),
        ("eval", "--ring", "b,poly", "2*x"),
        ("eval", "--ring", "nope", "x"),
        ("eval", "x"),
        ("frobnicate",),
        ("member", "--ring", "b,poly", "(x, 1)"),
        ("is-irreducible", "--ring", "b,poly", "--cong", "trivial"),
        ("dim", "--ring", "b,poly"),
        ("dim", "--table", "/nonexistent/table.json"),
        ("dim", "--ring", "rmax"),
        ("verify", "dplusone"),
        ("congruences", "--table", "t3", "--cap", "0"),
        ("congruences", "--table", "trunc4", "--cap", "3"),
        ("eval", "--ring", "b,poly", "x", "--assign", "z=1"),
    ],
    ids=lambda a: " ".join(a),
)
def test_usage_and_parse_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert "Traceback" not in err


def test_syntax_error_reports_position():
    code, _, err = run("eval", "--ring", "b,poly", "x + ")
    assert code == 2 and "column 4" in err


def test_invalid_table_is_reported(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "bad", "carrier": ["0", "1"], "add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 1]]}))
    code, _, err = run("dim", "--table", str(bad))
    assert code == 2 and err


def test_env_cap(monkeypatch):
    monkeypatch.setenv("IDEMDIM_CAP", "3")
    assert run("congruences", "--table", "trunc4")[0] == 2
    monkeypatch.setenv("IDEMDIM_CAP", "8")
    assert run("congruences", "--table", "trunc4")[0] == 0


def test_verification_failure_exits_1(monkeypatch):
    def failing(claim, **params):
        rep = VerificationReport(claim, params)
        rep.add("strictness", False, "P0 = P1", {"step": 0, "pair": "(x, x)"})
        return rep

    monkeypatch.setattr(harness, "verify_theorems", failing)
    code, text, _ = run("verify", "dplusone", "--base", "b")
    assert code == 1
    assert "FAIL" in text and "(x, x)" in text


@pytest.mark.parametrize(
    "argv",
    [
        ("member", "--ring", "b,laurent,2", "--cong", "weight[[1,0]]", "(x+y, x)"),
        ("kernel", "--ring", "b,poly", "--cong", "trivial", "x"),
        ("dim", "--table", T3),
        ("congruences", "--table", "bxb"),
        ("is-prime", "--table", "bxb", "--cong", "trivial"),
        ("is-qc", "--table", "t3", "--cong", "trivial"),
        ("is-irreducible", "--table", "t3", "--cong", "trivial"),
        ("eval", "--ring", "qmax,poly,2", "1/2*x + y"),
        ("leq", "--ring", "zmax", "3", "4"),
        ("chain", "--ring", "zmax,poly"),
        ("verify", "dplusone", "--base", "zmax", "--mode", "laurent"),
        ("verify", "laurentdim", "--base", "lex2"),
        ("verify", "trivkerchain", "--base", "mon2"),
    ],
    ids=lambda a: " ".join(a[:2]),
)
def test_json_output_matches_schema(argv):
    code, doc = run_json(*argv)
    assert code == 0 and doc["verb"] == argv[0]


def test_json_member_payload():
    _, doc = run_json("member", "--ring", "b,laurent,2", "--cong", "weight[[1,0]]", "(x+y, x)")
    assert doc["result"]["member"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "dplusone", "--base", "zmax", "--mode", "laurent", "--seed", "5"),
        ("chain", "--ring", "mon2,poly", "--seed", "9"),
        ("congruences", "--table", "rand_03"),
    ],
)
@pytest.mark.parametrize("fmt", ["text", "json"])
def test_byte_identical_reruns(argv, fmt):
    first = run(*argv, "--format", fmt)
    second = run(*argv, "--format", fmt)
    assert first == second and first[0] == 0
