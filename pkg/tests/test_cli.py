import io
import json

import pytest

from hcodim.catalog import (
    algebra_to_json, catalog_get, catalog_names, document_hash, load_action, load_algebra, load_grading,
)
from hcodim.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_check_graded_commutator():
    code, out, _ = call("check", "--catalog", "ut2_z2", "[x1^(0), x2^(0)]")
    assert code == 0
    assert out.splitlines()[0] == "identity: true"


def test_check_non_identity_and_generic_path():
    assert call("check", "--catalog", "ut2_z2", "x1^(0)*x2^(1)")[1].startswith("identity: false")
    code, out, _ = call("check", "--catalog", "f1", "x1*x1 - x1")
    assert out == "identity: false\npath: generic\n"


def test_codim_f1():
    code, out, _ = call("codim", "--catalog", "f1", "--n", "4")
    doc = json.loads(out)
    assert code == 0 and doc["n"] == 4 and doc["codim"] == 1 and doc["format"] == 1
    assert doc["provenance"]["hash"] == document_hash(catalog_get("f1"))


def test_graded_codim_group_algebra():
    code, out, _ = call("graded-codim", "--catalog", "fz2_z2", "--n", "3")
    doc = json.loads(out)
    assert (doc["n"], doc["codim"], doc["crosscheck"]) == (3, 8, "ok")


def test_certify_changes_only_the_path():
    a = json.loads(call("codim", "--catalog", "m2_transpose", "--n", "3", "--assoc")[1])
    b = json.loads(call("codim", "--catalog", "m2_transpose", "--n", "3", "--assoc", "--certify")[1])
    assert a["codim"] == b["codim"] == 28
    assert a["provenance"]["certify"] is False and b["provenance"]["certify"] is True


@pytest.mark.parametrize("argv", [
    ("codim", "--catalog", "ut2", "--n", "3"),
    ("cocharacter", "--catalog", "ut2", "--n", "3"),
    ("exponent", "--catalog", "f1", "--max-n", "3"),
    ("simple", "--catalog", "m2_transpose", "--seed", "5"),
    ("derive-coproducts", "--catalog", "m2_transpose"),
])
def test_byte_stable(argv):
    assert call(*argv)[1] == call(*argv)[1]


def test_exit_codes(tmp_path):
    assert call("codim", "--catalog", "nope", "--n", "2")[0] == 2
    assert call("codim", "--catalog", "f1")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("check", "--catalog", "ut2", "x1*x2*x3")[0] == 2
    assert call("codim", "--catalog", "m2", "--n", "7", "--assoc")[0] == 3
    assert call("codim", "--catalog", "ut2", "--n", "6")[0] == 3
    bad = dict(catalog_get("m2"), grading={"labels": ["0", "1"], "degree": [0, 1, 0, 0]})
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = call("validate", "--algebra", str(path))
    assert code == 1 and "InconsistentGrading" in err


def test_validate_rejects_perturbed_action(tmp_path):
    doc = catalog_get("m2_transpose")
    doc["haction"]["rho"][1][3][3] = "-1"
    path = tmp_path / "perturbed.json"
    path.write_text(json.dumps(doc))
    code, _, err = call("validate", "--algebra", str(path))
    assert code == 1 and "NotGeneralizedAction" in err


def test_validate_and_simple_outputs():
    doc = json.loads(call("validate", "--catalog", "ut2_z2")[1])
    assert doc["grading"] == "ok" and doc["support"] == ["0", "1"]
    doc = json.loads(call("simple", "--catalog", "ut2")[1])
    assert doc["verdict"] == "NotSimple" and doc["ideal_basis"] == [["0", "0", "1"]]
    assert json.loads(call("simple", "--catalog", "fz2_z2")[1])["verdict"] == "Simple"


def test_cocharacter_formats():
    code, out, _ = call("cocharacter", "--catalog", "ut2", "--n", "2", "--format", "csv")
    assert out == "n,lambda,multiplicity,dim_irr\n2,2,1,1\n2,1 1,1,1\n"
    doc = json.loads(call("cocharacter", "--catalog", "ut2", "--n", "2")[1])
    assert doc["codimension"] == 2 and doc["format"] == 1
    table = call("cocharacter", "--catalog", "ut2", "--n", "3", "--format", "table")[1].splitlines()
    assert table[0] == "n=3 codimension=6 colength=4 method=both"
    assert table[3].split() == ["2", "1", "2", "2"]


@pytest.mark.parametrize("fmt", ["json", "csv", "table"])
@pytest.mark.parametrize("command", [
    ("validate", "--catalog", "ut2_z2"), ("simple", "--catalog", "ut2"), ("codim", "--catalog", "ut2", "--n", "3"),
    ("graded-codim", "--catalog", "ut2_z2", "--n", "2"), ("cocharacter", "--catalog", "ut2", "--n", "3"),
    ("exponent", "--catalog", "ut2", "--max-n", "2"), ("check", "--catalog", "ut2", "[x1, x2]"),
    ("grade2h", "--catalog", "fz2_z2"), ("derive-coproducts", "--catalog", "m2_transpose"),
])
def test_every_command_every_format(command, fmt):
    code, out, _ = call(*command, "--format", fmt)
    assert code == 0 and out


def test_codim_csv_and_table():
    assert call("codim", "--catalog", "f1", "--n", "2", "--format", "csv")[1] == "n,codim\n2,1\n"
    assert call("codim", "--catalog", "f1", "--n", "2", "--format", "table")[1] == "n: 2\ncodim: 1\n"


def test_matrix_dump(tmp_path):
    path = tmp_path / "e.txt"
    assert call("codim", "--catalog", "ut2", "--n", "2", "--dump-matrix", str(path))[0] == 0
    lines = path.read_text().splitlines()
    assert lines[0].startswith("%hcodim-triplets format=1 n=2")


def test_catalog_commands():
    out = call("catalog", "list")[1]
    assert [line.split("\t")[0] for line in out.splitlines()] == catalog_names()
    assert json.loads(call("catalog", "show", "f1")[1])["table"] == [[0, 0, 0, "1"]]
    assert call("catalog", "show", "nope")[0] == 2


def test_grade2h_output_validates():
    doc = json.loads(call("grade2h", "--catalog", "ut2_z2")[1])
    assert doc["haction"]["hbasis"] == ["h_0", "h_1"]
    act = load_action(doc)
    from hcodim.algebra import validate_haction
    validate_haction(load_algebra(doc), act)


def test_catalog_entries():
    f1 = catalog_get("f1")
    assert f1["dim"] == 1 and f1["table"] == [[0, 0, 0, "1"]]
    ut2 = catalog_get("ut2")
    assert ut2["dim"] == 3 and ut2["basis"] == ["e11", "e22", "e12"]
    t = catalog_get("m2_transpose")
    assert t["basis"] == ["e11", "e12", "e21", "e22"]
    assert t["haction"]["rho"][1] == [["1", "0", "0", "0"], ["0", "0", "1", "0"],
                                      ["0", "1", "0", "0"], ["0", "0", "0", "1"]]
    with pytest.raises(KeyError, match="available"):
        catalog_get("nope")


@pytest.mark.parametrize("name", catalog_names())
def test_catalog_round_trip(name):
    doc = catalog_get(name)
    A = load_algebra(doc)
    again = algebra_to_json(A, load_grading(doc, A), load_action(doc))
    assert again == doc


def test_help_mentions_indexing(capsys):
    assert run(["codim", "--help"]) == 0
    assert "0-based" in capsys.readouterr().out
