import json

import pytest

from reczoo.cli import main

V2_EVEN = json.dumps({
    "kind": "recseq",
    "partition": {"kind": "partition", "domain": "nat", "k": 2, "default_class": 0, "explicit": {"1": 1}},
    "quotient": {"kind": "rect_union", "signature": ["nat", "nat"], "rects": [[
        {"kind": "up", "threshold": 0, "period": 1, "prefix": [0], "residues": [0]},
        {"kind": "up", "threshold": 0, "period": 2, "prefix": [0], "residues": [0]}]]},
})
FULL_INT = json.dumps({
    "kind": "recseq",
    "partition": {"kind": "partition", "domain": "int", "k": 1, "default_class": 0, "explicit": {}},
    "quotient": {"kind": "rect_union", "signature": ["int"],
                 "rects": [[{"kind": "periodic", "period": 1, "residues": [0]}]]},
})
PART = '{"kind":"partition","domain":"nat","k":2,"default_class":0,"explicit":{"2":1,"6":1}}'


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return _run


@pytest.fixture
def z2_cay(tmp_path):
    path = tmp_path / "z2.cay"
    path.write_text("2\n0\n0 1\n1 0\n")
    return path


def test_natmul_member_from_file(run, tmp_path):
    path = tmp_path / "v2even.json"
    path.write_text(V2_EVEN)
    assert run("natmul", "member", "--set", str(path), "--n", "12") == (0, "true\n", "")
    assert run("natmul", "member", "--set", str(path), "--n", "8") == (0, "false\n", "")


def test_table1(run):
    code, out, _ = run("table1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "Recognizable subsets of additive monoids (X, +, 0)"
    assert "ℤ≥0  ultimately periodic sets" in lines
    assert "ℚ≥0  {∅, ℚ≥0, {0}, ℚ>0}" in lines
    assert "ℝ      {∅, {0}, ℝ<0, ℝ≤0, ℝ>0, ℝ≥0, ℝ∖{0}, ℝ}" in lines


def test_monoid_commands(run, m3_cay, z2_cay):
    assert run("monoid", "omega", "--table", str(m3_cay), "--element", "1") == (0, "2\n", "")
    assert run("monoid", "idempotents", "--table", str(m3_cay))[1] == "0 2\n"
    assert run("monoid", "zero", "--table", str(m3_cay))[1] == "2\n"
    assert run("monoid", "validate", "--table", str(m3_cay))[1] == "valid monoid: size 3, unit 0\n"
    code, out, _ = run("monoid", "zero", "--table", str(z2_cay), "--adjoin")
    assert out.splitlines()[1:] == ["3", "0", "0 1 2", "1 0 2", "2 2 2"]
    code, out, _ = run("monoid", "product", "--table", str(z2_cay), "--table2", str(z2_cay))
    assert out.splitlines()[1:3] == ["4", "0"]


def test_monoid_zero_already_present(run, m3_cay):
    code, _, err = run("monoid", "zero", "--table", str(m3_cay), "--adjoin")
    assert code == 1 and err.startswith("AlreadyHasZero:")


def test_addset_normalize_flag(run):
    doc = '{"kind":"periodic","period":4,"residues":[0,2]}'
    code, _, err = run("addset", "member", "--set", doc, "--n", "3")
    assert code == 1 and err.startswith("NonCanonical:")
    assert run("addset", "member", "--set", doc, "--n", "3", "--normalize") == (0, "false\n", "")
    assert run("--normalize", "addset", "member", "--set", doc, "--n", "4")[1] == "true\n"


def test_addset_from_morphism(run, m3_cay):
    code, out, _ = run("addset", "from-morphism", "--table", str(m3_cay), "--image", "1", "--accepting", "1")
    assert json.loads(out) == {"kind": "up", "threshold": 1, "period": 1, "prefix": [1], "residues": []}


def test_addset_op_and_eq(run):
    evens = '{"kind":"periodic","period":2,"residues":[0]}'
    odds = '{"kind":"periodic","period":2,"residues":[1]}'
    code, out, _ = run("addset", "op", "union", evens, odds)
    assert json.loads(out) == {"kind": "periodic", "period": 1, "residues": [0]}
    assert run("addset", "eq", evens, f"complement({odds})")[1] == "true\n"


def test_lattice_commands(run):
    assert run("lattice", "show", "--monoid", "mul:R")[1] == "{∅, {0}, ℝ<0, ℝ≤0, ℝ>0, ℝ≥0, ℝ∖{0}, ℝ}\n"
    assert run("lattice", "check", "--monoid", "add:R", "--atom", "zero")[1] == "{0}: not recognizable\n"
    code, out, _ = run("lattice", "check", "--monoid", "add:R>=0", "--atom", "zero", "--json")
    assert json.loads(out)["recognizable"] is True
    assert json.loads(out)["recognizer_size"] == 2
    assert run("lattice", "adjoin-zero", "--monoid", "mul:C!=0")[1] == "{∅, {0}, ℂ∖{0}, ℂ}\n"
    code, _, err = run("lattice", "show", "--monoid", "add:Z")
    assert code == 1 and err.startswith("RecNotFinite:")


def test_rect_from_hom(run, z2_cay, tmp_path):
    code, out, _ = run("rect", "from-hom", "--table", str(z2_cay), "--images", "1,1", "--accepting", "0")
    doc = json.loads(out)
    assert doc["signature"] == ["nat", "nat"] and len(doc["rects"]) == 2
    path = tmp_path / "parity.json"
    path.write_text(out)
    assert run("rect", "member", "--set", str(path), "--point", "3,5")[1] == "true\n"
    assert run("rect", "member", "--set", str(path), "--point", "3,4")[1] == "false\n"


def test_seq_commands(run):
    assert run("seq", "factorize", "12")[1] == "[2, 1]\n"
    assert run("seq", "factorize", "8/9")[1] == "[3, -2]\n"
    assert run("seq", "factorize", "3,-2", "--recompose", "--domain", "int")[1] == "8/9\n"
    assert run("seq", "sigma", "3")[1] == "[0, 0, 1]\n"
    assert run("seq", "add", "1,2", "0,1,4")[1] == "[1, 3, 4]\n"
    assert run("seq", "project", "--partition", PART, "--seq", "0,0,1,0,0,1")[1] == "[1, 1]\n"
    assert run("seq", "member", "--set", V2_EVEN, "--seq", "2")[1] == "true\n"


def test_ratmul(run):
    code, _, err = run("ratmul", "member", "--set", V2_EVEN, "--q", "4/9")
    assert code == 1 and err.startswith("DomainMismatch:")
    assert run("ratmul", "member", "--set", FULL_INT, "--q=-3/4", "--signs=-1")[1] == "true\n"
    code, _, err = run("ratmul", "member", "--set", FULL_INT, "--q", "0", "--signs", "1")
    assert code == 1 and err.startswith("ZeroInput:")


def test_witness_commands(run):
    code, out, _ = run("witness", "prop6", "--kind", "length", "--property", "even",
                       "--partition", PART, "--triple", "2,3,6")
    assert out == "s1 = [0, 0, 1, 0, 0, 1]\ns2 = [0, 1, 1]\nprojection = [1, 1]\nvalid = true\n"
    assert run("witness", "prop7", "--set", FULL_INT, "--seq", "1", "--p", "3")[1] == "[1, 0, 0, 1, -1]\n"
    assert run("witness", "sx-separate", "--x", "1", "--y", "2")[1] == "[1]\n"
    assert run("witness", "sx-separate", "--x", "-5", "--y", "5")[1] == "none\n"
    code, out, _ = run("witness", "m3", "--indices", "2", "--cofinite", "--seq", "0,0,0,0,1")
    assert out.splitlines()[-1] == "accepted = true"
    code, _, err = run("witness", "prop6", "--kind", "forall", "--property", "always", "--partition", PART)
    assert code == 1 and err.startswith("CertificateExhausted:")


def test_json_output(run):
    code, out, _ = run("--json", "seq", "factorize", "12")
    assert json.loads(out) == {"kind": "expseq", "domain": "nat", "entries": [2, 1]}


def test_usage_errors(run):
    assert run("bogus")[0] == 2
    assert run("monoid", "omega", "--table", "x.cay")[0] == 2
    code, _, err = run("monoid", "omega", "--table", "missing.cay", "--element", "1")
    assert code == 1 and err == "ParseError: no such table file: missing.cay\n"


def test_parse_error_has_location(run):
    code, _, err = run("addset", "member", "--set", '{"kind": "up", "period": }', "--n", "1")
    assert code == 1 and "line 1 column" in err


def test_outputs_are_stable(run, m3_cay):
    first = run("witness", "prop6", "--kind", "forall", "--property", "even", "--partition", PART)
    second = run("witness", "prop6", "--kind", "forall", "--property", "even", "--partition", PART)
    assert first == second and first[0] == 0


def test_verify_quick_with_report(run, tmp_path):
    code, out, _ = run("verify", "registry", "divisibility_lemma", "--quick", "--report-dir", str(tmp_path))
    assert code == 0
    assert "PASS  registry" in out and "overall: pass" in out
    assert (tmp_path / "report.png").stat().st_size > 0
    rows = (tmp_path / "report.tsv").read_text().splitlines()
    assert rows[0].split("\t")[:2] == ["claim_id", "status"]
    assert json.loads((tmp_path / "report.json").read_text())["status"] == "pass"


def test_verify_fault_exits_one(run):
    code, out, _ = run("verify", "registry", "--fault", "drop-lattice-element")
    assert code == 1 and "FAIL  registry" in out


def test_verify_config_errors(run):
    assert run("verify", "nonsense")[0] == 2
    assert run("verify", "--fault", "nonsense")[0] == 2


def test_seed_from_environment(run, monkeypatch):
    monkeypatch.setenv("RECZOO_SEED", "17")
    code, out, _ = run("--json", "verify", "lengthening", "--quick")
    assert code == 0 and json.loads(out)["seed"] == 17
    monkeypatch.setenv("RECZOO_SEED", "abc")
    assert run("verify", "lengthening", "--quick")[0] == 2
