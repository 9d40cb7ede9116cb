"""Acceptance suite: thirteen numbered criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` (the summary is also printed at
the end of any pytest run that includes this file) or directly as a script.
The expensive cocharacter reports are computed once and shared.
"""
import random
from math import factorial

import pytest

from hcodim.algebra import grading_to_haction, is_h_simple
from hcodim.codim import codimension
from hcodim.exponent import phi, pushing_boxes_monotonicity_check, exponent_row, max_multinomial
from hcodim.freealg import Alphabet, HBasis, is_identity_multilinear
from hcodim.generic import colength_type_bound, generic_span_dimension, is_identity_generic
from hcodim.parsing import parse_polynomial
from hcodim.symfunc import (
    cocharacter_report, colength_bound, dim_irreducible, partitions, standard_tableaux,
    tuple_space_multiplicity,
)

from conftest import decorations_of, load, random_multilinear

CATALOG = ["f1", "zero3", "ff", "ut2", "ut2_z2", "m2", "m2_transpose", "m2_conj", "fz2_z2"]

RESULTS: dict = {}

TITLES = {
    1: "graded identities of UT2/Z2",
    2: "graded codimension equals induced F^T-action codimension",
    3: "c_n <= c_n^gr <= 2^n c_n, attained on FZ2/Z2",
    4: "codimensions nondecreasing for H-simple fixtures",
    5: "colength <= s(n+1)^(s^2+s) on every report",
    6: "over-tall multiplicities computed as zero",
    7: "cocharacter sums and symmetrizer/character agreement",
    8: "generic-element test agrees with basis substitution",
    9: "generic span dimension <= s(n+1)^(ks)",
    10: "hook length formula and sum of squares",
    11: "c_n <= colength * max multinomial on every report",
    12: "Phi sanity checks",
    13: "FZ2/Z2 exponent trend (reported, not asserted)",
}


def record(num: int, ok: bool, detail: str = "") -> None:
    RESULTS[num] = (ok, detail)


def summary_lines() -> list[str]:
    lines = []
    for num in sorted(TITLES):
        if num not in RESULTS:
            lines.append(f"[SKIP] {num:2d} {TITLES[num]} (not run)")
            continue
        ok, detail = RESULTS[num]
        tag = "PASS" if ok else "FAIL"
        lines.append(f"[{tag}] {num:2d} {TITLES[num]}" + (f" -- {detail}" if detail else ""))
    return lines


def checked(num: int, cond: bool, detail: str = "") -> None:
    """Record the outcome, then assert it."""
    record(num, cond, detail)
    assert cond, detail


# --- shared reports -------------------------------------------------------------

# name -> list of (n, assoc, over-tall shapes computed on the quotient)
REPORT_PLAN = {
    "f1": [(1, False, ()), (2, False, ((1, 1),)), (3, False, ((2, 1), (1, 1, 1))), (4, False, ())],
    "zero3": [(1, False, ()), (2, False, ()), (3, False, ()), (4, False, ((1, 1, 1, 1),)),
              (5, False, ((2, 1, 1, 1), (1, 1, 1, 1, 1)))],
    "ff": [(1, False, ()), (2, False, ()), (3, False, ((1, 1, 1),)), (4, False, ((2, 1, 1), (1, 1, 1, 1))),
           (5, False, ())],
    "ut2": [(1, False, ()), (2, False, ()), (3, False, ()), (4, False, ((1, 1, 1, 1),)),
            (5, False, ((2, 1, 1, 1), (1, 1, 1, 1, 1)))],
    "ut2_z2": [(1, False, ()), (2, False, ()), (3, False, ()), (4, False, ((1, 1, 1, 1),)),
               (5, True, ((2, 1, 1, 1), (1, 1, 1, 1, 1)))],
    "fz2_z2": [(1, True, ()), (2, True, ()), (3, True, ((1, 1, 1),)), (4, True, ((2, 1, 1), (1, 1, 1, 1))),
               (5, True, ())],
    "m2": [(n, True, ()) for n in range(1, 5)] + [(5, True, ((1, 1, 1, 1, 1),)),
                                                 (6, True, ((2, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1)))],
    "m2_transpose": [(n, True, ()) for n in range(1, 5)] + [(5, True, ((1, 1, 1, 1, 1),))],
    "m2_conj": [(n, True, ()) for n in range(1, 5)] + [(5, True, ((1, 1, 1, 1, 1),))],
}

# Shapes too costly for the quotient at n = 6 with an H-action (46080 x 16384
# evaluation matrix): bounded through the tuple-space permutation module instead.
TUPLE_SPACE_PLAN = {
    "m2_transpose": ((2, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1)),
    "m2_conj": ((2, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1)),
}

_reports: dict = {}


def reports(name: str) -> list:
    if name not in _reports:
        f = load(name)
        _reports[name] = [
            cocharacter_report(n, f.A, f.act, f.grading, assoc=assoc, overtall=tall)
            for n, assoc, tall in REPORT_PLAN[name]
        ]
    return _reports[name]


def all_reports():
    for name in REPORT_PLAN:
        for rep in reports(name):
            yield name, rep


# --- criteria -------------------------------------------------------------------


def test_criterion_01_graded_identities_ut2():
    f = load("ut2_z2")
    alphabet = Alphabet.for_grading(f.grading)
    cases = {"[x1^(0), x2^(0)]": True, "x1^(1)*x2^(1)": True, "x1^(0)*x2^(1)": False}
    got = {}
    for text, expected in cases.items():
        p = parse_polynomial(text, alphabet)
        generic = is_identity_generic(p, f.A, grading=f.grading)
        basis = is_identity_multilinear(p, f.A, grading=f.grading)
        got[text] = (generic, basis)
    ok = all(got[t] == (e, e) for t, e in cases.items())
    checked(1, ok, "; ".join(f"{t}: {g[0]}" for t, g in got.items()))


def test_criterion_02_graded_vs_induced_action():
    pairs = []
    for name in ("ut2_z2", "fz2_z2"):
        f = load(name)
        act = grading_to_haction(f.A, f.grading)
        for n in range(1, 5):
            direct = codimension(n, f.A, grading=f.grading, mode="graded")
            induced = codimension(n, f.A, act, mode="haction")
            pairs.append((name, n, direct, induced))
    bad = [p for p in pairs if p[2] != p[3]]
    detail = ", ".join(f"{name}: " + " ".join(str(d) for nm, _, d, _ in pairs if nm == name)
                       for name in ("ut2_z2", "fz2_z2"))
    checked(2, not bad, detail if not bad else f"mismatch {bad}")


def test_criterion_03_sandwich():
    failures, rows = [], []
    for name in ("ut2_z2", "fz2_z2"):
        f = load(name)
        for n in range(1, 5):
            c = codimension(n, f.A)
            gr = codimension(n, f.A, grading=f.grading, mode="graded")
            rows.append((name, n, c, gr))
            if not c <= gr <= 2**n * c:
                failures.append((name, n, c, gr))
    fz = load("fz2_z2")
    for n in range(1, 6):
        assoc = n == 5  # the decorated nonassociative budget stops at 4
        c = codimension(n, fz.A, assoc=assoc)
        gr = codimension(n, fz.A, grading=fz.grading, mode="graded", assoc=assoc)
        if (c, gr) != (1, 2**n):
            failures.append(("fz2_z2 attained", n, c, gr))
    detail = "UT2 c^gr " + " ".join(str(gr) for nm, _, _, gr in rows if nm == "ut2_z2") + "; FZ2 c_n=1, c^gr=2^n (n<=5)"
    checked(3, not failures, detail if not failures else f"failures {failures}")


def test_criterion_04_monotone_for_simple():
    failures, parts = [], []
    for name in ("m2", "fz2_z2", "m2_transpose"):
        f = load(name)
        act = f.act if f.grading is None else grading_to_haction(f.A, f.grading)
        verdict = is_h_simple(f.A, act).verdict
        codims = [r.codimension for r in reports(name)]
        parts.append(f"{name} {verdict} {codims}")
        if verdict != "Simple":
            failures.append(f"{name} not certified simple ({verdict})")
        if any(a > b for a, b in zip(codims, codims[1:])):
            failures.append(f"{name} decreases: {codims}")
    checked(4, not failures, "; ".join(failures or parts))


def test_criterion_05_colength_bound():
    bad, count = [], 0
    for name, rep in all_reports():
        count += 1
        if rep.colength > colength_bound(rep.s, rep.n):
            bad.append((name, rep.n, rep.colength))
    checked(5, not bad, f"{count} reports" if not bad else f"violations {bad}")


def test_criterion_06_overtall_vanishing():
    per_fixture, nonzero = {}, []
    for name, rep in all_reports():
        for lam, m in rep.overtall.items():
            per_fixture.setdefault(name, []).append(lam)
            if m:
                nonzero.append((name, lam, m))
    for name, shapes in TUPLE_SPACE_PLAN.items():
        s = load(name).A.dim
        for lam in shapes:
            # m(λ) <= s * rank(e_T on Q^{[s]^n})
            bound = s * tuple_space_multiplicity(lam, s)
            per_fixture.setdefault(name, []).append(lam)
            if bound:
                nonzero.append((name, lam, f"bound {bound}"))
    short = [name for name in REPORT_PLAN if len(per_fixture.get(name, [])) < 3]
    ok = not nonzero and not short
    detail = f"{sum(map(len, per_fixture.values()))} shapes over {len(per_fixture)} fixtures, all zero"
    checked(6, ok, detail if ok else f"nonzero {nonzero}, fewer than three shapes: {short}")


def test_criterion_07_cocharacter_consistency():
    bad, count = [], 0
    for name, rep in all_reports():
        count += 1
        if sum(m * d for _, m, d in rep.entries) != rep.codimension or rep.method != "both":
            bad.append((name, rep.n, rep.method))
    checked(7, not bad, f"{count} reports, all symmetrizer-checked" if not bad else f"failures {bad}")


def test_criterion_08_generic_vs_substitution():
    rnd = random.Random(20240517)
    disagreements, identities, total = [], 0, 0
    for name in CATALOG:
        f = load(name)
        decs, (act, grading) = decorations_of(f)
        for i in range(200):
            n = 1 + i % 3
            p = random_multilinear(rnd, n, decs, terms=rnd.randint(1, 4), assoc=False)
            generic = is_identity_generic(p, f.A, act, grading)
            basis = is_identity_multilinear(p, f.A, act, grading)
            total += 1
            identities += generic
            if generic != basis:
                disagreements.append((name, str(p)))
    ok = not disagreements
    checked(8, ok, f"{total} polynomials, {identities} identities" if ok else f"disagree on {disagreements[:3]}")


def test_criterion_09_generic_span_bound():
    bad, count = [], 0
    for name in CATALOG:
        f = load(name)
        if f.A.dim > 3:
            continue
        act, decs = f.act, (None,)
        if f.grading is not None:
            act = grading_to_haction(f.A, f.grading)
        if act is not None:
            decs = [HBasis(j) for j in range(act.hdim)]
        for k in (1, 2):
            for n in (1, 2, 3):
                dim = generic_span_dimension(f.A, k, n, act, decs)
                count += 1
                if dim > colength_type_bound(f.A.dim, n, k):
                    bad.append((name, k, n, dim))
    checked(9, not bad, f"{count} cases" if not bad else f"violations {bad}")


def test_criterion_10_hook_formula():
    bad = []
    for n in range(1, 9):
        shapes = partitions(n)
        for lam in shapes:
            if dim_irreducible(lam) != sum(1 for _ in standard_tableaux(lam)):
                bad.append(lam)
        if sum(dim_irreducible(lam) ** 2 for lam in shapes) != factorial(n):
            bad.append(("squares", n))
    checked(10, not bad, "n <= 8" if not bad else f"failures {bad}")


def test_criterion_11_factorial_bound():
    bad = []
    for name, rep in all_reports():
        support = [lam for lam, m, _ in rep.entries if m]
        bound = rep.colength * max_multinomial(rep.n, support)
        if rep.codimension > bound:
            bad.append((name, rep.n, rep.codimension, bound))
    checked(11, not bad, "all reports" if not bad else f"violations {bad}")


def test_criterion_12_phi_sanity():
    uniform = all(abs(phi([1 / s] * s) - s) <= 1e-12 for s in range(1, 17))
    corner = phi([1, 0, 0]) == 1.0 and phi([1]) == 1.0
    boxes = all(pushing_boxes_monotonicity_check(xi, 1000) for xi in (1, 0.5, 0.25))
    checked(12, uniform and corner and boxes, f"uniform {uniform}, corner {corner}, monotone {boxes}")


def test_criterion_13_fz2_trend():
    f = load("fz2_z2")
    rows = [exponent_row(n, f.A, grading=f.grading, assoc=True) for n in range(1, 6)]
    exact_root = all(r.codim == 2**r.n for r in rows)
    nondecreasing = all(a.d_n <= b.d_n for a, b in zip(rows, rows[1:]))
    trend = ", ".join(f"n={r.n}: c_n^(1/n)={r.root:.4f} d_n={r.d_n:.4f}" for r in rows)
    print("\nFZ2/Z2 exponent trend (the exponent of an H-simple algebra is the limit of d_n):\n  " + trend)
    detail = ("c_n^(1/n) = 2 exactly; d_n " + ("nondecreasing" if nondecreasing else "NOT monotone: ")
              + " ".join(f"{r.d_n:.4f}" for r in rows))
    # Only the exact codimension part is asserted; the d_n trend is informational.
    checked(13, exact_root, detail)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
