"""Algebra documents (JSON schema, format 1) and the built-in fixture catalog."""
from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass

from .algebra import Algebra, GeneralizedHAction, Grading, make_action, validate_grading

FORMAT = 1


class DocumentError(ValueError):
    pass


def _q(x) -> str:
    return str(x)


def _require(cond, msg):
    if not cond:
        raise DocumentError(msg)


def check_document(doc: dict) -> None:
    """Structural validation of an algebra document."""
    _require(isinstance(doc, dict), "document must be a JSON object")
    _require(doc.get("format", FORMAT) == FORMAT, f"unsupported format {doc.get('format')!r}")
    for key in ("name", "dim", "basis", "table"):
        _require(key in doc, f"missing field {key!r}")
    s = doc["dim"]
    _require(isinstance(s, int) and s >= 1, "dim must be a positive integer")
    _require(len(doc["basis"]) == s, "basis length must equal dim")
    for entry in doc["table"]:
        _require(len(entry) == 4, f"table entries are [i, j, k, coeff]: {entry!r}")
        i, j, k, c = entry
        _require(all(isinstance(x, int) and 0 <= x < s for x in (i, j, k)), f"index out of range in {entry!r}")
        _require(isinstance(c, (str, int)), f"coefficients are strings 'p/q': {entry!r}")
    if "grading" in doc:
        g = doc["grading"]
        _require(len(g.get("degree", [])) == s, "grading.degree needs one label index per basis vector")
        _require(all(0 <= d < len(g["labels"]) for d in g["degree"]), "grading.degree index out of range")
    if "haction" in doc:
        h = doc["haction"]
        m = h.get("hdim")
        _require(isinstance(m, int) and m >= 1, "haction.hdim must be a positive integer")
        _require(len(h.get("hbasis", [])) == m, "haction.hbasis length must equal hdim")
        _require(len(h.get("unit", [])) == m, "haction.unit length must equal hdim")
        _require(len(h.get("rho", [])) == m, "haction.rho needs hdim matrices")
        for mat in h["rho"]:
            _require(len(mat) == s and all(len(r) == s for r in mat), "rho matrices must be dim x dim")
        for entry in h.get("htable", []):
            _require(len(entry) == 4 and all(isinstance(x, int) and 0 <= x < m for x in entry[:3]),
                     f"bad haction.htable entry {entry!r}")


def load_algebra(doc: dict) -> Algebra:
    check_document(doc)
    try:
        return Algebra.from_table(doc["name"], doc["basis"], doc["table"])
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(str(exc)) from exc


def load_grading(doc: dict, A: Algebra | None = None) -> Grading | None:
    if "grading" not in doc:
        return None
    A = A or load_algebra(doc)
    g = doc["grading"]
    return validate_grading(A, g["degree"], g["labels"])


def load_action(doc: dict) -> GeneralizedHAction | None:
    if "haction" not in doc:
        return None
    h = doc["haction"]
    return make_action(h["hbasis"], h.get("htable", []), h["unit"], h["rho"])


def action_to_json(act: GeneralizedHAction) -> dict:
    return {
        "hdim": act.hdim,
        "hbasis": list(act.hbasis),
        "unit": [_q(x) for x in act.unit],
        "htable": [[i, j, k, _q(c)] for (i, j) in sorted(act.htable) for k, c in sorted(act.htable[(i, j)].items())],
        "rho": [[[_q(x) for x in row] for row in mat] for mat in act.rho],
    }


def algebra_to_json(A: Algebra, grading: Grading | None = None, act: GeneralizedHAction | None = None) -> dict:
    doc = {
        "format": FORMAT,
        "name": A.name,
        "dim": A.dim,
        "basis": list(A.basis),
        "table": [[i, j, k, _q(c)] for i, j, k, c in A.table()],
    }
    if grading is not None:
        doc["grading"] = {"labels": list(grading.labels), "degree": list(grading.degree)}
    if act is not None:
        doc["haction"] = action_to_json(act)
    return doc


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def document_hash(doc: dict) -> str:
    return hashlib.sha256(canonical_json(doc).encode()).hexdigest()[:16]


# --- catalog -------------------------------------------------------------------


def _matrix_units(n: int):
    basis = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    table = []
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                table.append([a, b, idx[(i, l)], "1"])
    return basis, table


def _m2_doc(name):
    basis, table = _matrix_units(2)
    return {"format": FORMAT, "name": name, "dim": 4, "basis": basis, "table": table}


_FZ2_HACTION_TABLE = [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "1"]]
_ID4 = [["1" if r == c else "0" for c in range(4)] for r in range(4)]


def _build_catalog() -> dict:
    cat = {}
    cat["f1"] = (
        {"format": FORMAT, "name": "f1", "dim": 1, "basis": ["a1"], "table": [[0, 0, 0, "1"]]},
        "the field F itself, a1*a1 = a1",
    )
    cat["zero3"] = (
        {"format": FORMAT, "name": "zero3", "dim": 3, "basis": ["a1", "a2", "a3"], "table": []},
        "3-dimensional algebra with zero multiplication",
    )
    cat["ff"] = (
        {"format": FORMAT, "name": "ff", "dim": 2, "basis": ["e1", "e2"],
         "table": [[0, 0, 0, "1"], [1, 1, 1, "1"]]},
        "F + F with orthogonal idempotents",
    )
    ut2 = {"format": FORMAT, "name": "ut2", "dim": 3, "basis": ["e11", "e22", "e12"],
           "table": [[0, 0, 0, "1"], [0, 2, 2, "1"], [1, 1, 1, "1"], [2, 1, 2, "1"]]}
    cat["ut2"] = (ut2, "upper triangular 2x2 matrices, matrix-unit basis")
    ut2_z2 = dict(copy.deepcopy(ut2), name="ut2_z2", grading={"labels": ["0", "1"], "degree": [0, 0, 1]})
    cat["ut2_z2"] = (ut2_z2, "UT2 graded by Z2: diagonal in degree 0, e12 in degree 1")
    cat["m2"] = (_m2_doc("m2"), "full 2x2 matrix algebra")
    transpose = dict(_m2_doc("m2_transpose"))
    perm = [["1" if (r, c) in {(0, 0), (1, 2), (2, 1), (3, 3)} else "0" for c in range(4)] for r in range(4)]
    transpose["haction"] = {"hdim": 2, "hbasis": ["1", "g"], "unit": ["1", "0"],
                            "htable": _FZ2_HACTION_TABLE, "rho": [_ID4, perm]}
    cat["m2_transpose"] = (transpose, "M2 with the group algebra FZ2 acting, g by transposition (an anti-automorphism)")
    conj = dict(_m2_doc("m2_conj"))
    diag = [["0"] * 4 for _ in range(4)]
    for i, x in enumerate(["1", "-1", "-1", "1"]):
        diag[i][i] = x
    conj["haction"] = {"hdim": 2, "hbasis": ["1", "g"], "unit": ["1", "0"],
                       "htable": _FZ2_HACTION_TABLE, "rho": [_ID4, diag]}
    cat["m2_conj"] = (conj, "M2 with FZ2 acting, g by conjugation with diag(1,-1) (an automorphism)")
    fz2 = {"format": FORMAT, "name": "fz2_z2", "dim": 2, "basis": ["1", "g"],
           "table": _FZ2_HACTION_TABLE, "grading": {"labels": ["0", "1"], "degree": [0, 1]}}
    cat["fz2_z2"] = (fz2, "group algebra FZ2 with its canonical Z2-grading")
    return cat


_CATALOG = _build_catalog()


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    document: dict
    provenance: str


def catalog_names() -> list[str]:
    return list(_CATALOG)


def catalog_get(name: str) -> dict:
    """A fresh copy of the named catalog document."""
    if name not in _CATALOG:
        raise KeyError(f"unknown catalog entry {name!r}; available: {', '.join(_CATALOG)}")
    return copy.deepcopy(_CATALOG[name][0])


def catalog_entry(name: str) -> CatalogEntry:
    doc = catalog_get(name)
    return CatalogEntry(name, doc, _CATALOG[name][1])
