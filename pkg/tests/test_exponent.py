import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hcodim.exponent import (
    BoundViolation, exponent_report, exponent_row, fmt, max_multinomial, phi, pushing_boxes_monotonicity_check,
)

from conftest import load


def test_phi_examples():
    assert phi([1]) == 1
    assert phi([0.5, 0.5]) == pytest.approx(2, abs=1e-12)
    assert phi([0.25] * 4) == pytest.approx(4, abs=1e-12)
    assert phi([1, 0]) == 1
    assert phi([Fraction(1, 3)] * 3) == pytest.approx(3, abs=1e-12)


@pytest.mark.parametrize("s", range(1, 17))
def test_phi_uniform(s):
    assert abs(phi([1 / s] * s) - s) < 1e-12


@pytest.mark.parametrize("bad", [[-0.1], [1.5], [0.5, 2]])
def test_phi_domain(bad):
    with pytest.raises(ValueError):
        phi(bad)


@given(st.lists(st.floats(0, 1), min_size=1, max_size=6), st.randoms(use_true_random=False))
def test_phi_permutation_invariant(xs, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    assert phi(xs) == pytest.approx(phi(ys), rel=1e-12)


@given(st.lists(st.integers(0, 20), min_size=1, max_size=6).filter(lambda v: sum(v) > 0))
def test_phi_at_least_one_on_simplex(parts):
    n = sum(parts)
    assert phi([p / n for p in parts]) >= 1 - 1e-12


@pytest.mark.parametrize("xi, grid", [(1, 100), (0.5, 100), (1, 2), (1, 1000), (0.5, 1000), (0.25, 1000)])
def test_pushing_boxes(xi, grid):
    assert pushing_boxes_monotonicity_check(xi, grid)


def test_pushing_boxes_domain():
    with pytest.raises(ValueError):
        pushing_boxes_monotonicity_check(1, 1)
    with pytest.raises(ValueError):
        pushing_boxes_monotonicity_check(0, 10)


def test_fmt_has_twelve_digits():
    assert fmt(2.0) == "2.000000000000"
    assert fmt(math.sqrt(2)) == "1.414213562373"


def test_max_multinomial():
    assert max_multinomial(4, [(4,), (2, 2)]) == 6
    assert max_multinomial(3, []) == 0


def test_f_rows():
    rep = exponent_report(load("f1").A)
    assert len(rep.rows) == 5
    assert all(r.codim == 1 and r.d_n == 1 and r.root == 1 for r in rep.rows)


def test_group_algebra_rows():
    f = load("fz2_z2")
    rep = exponent_report(f.A, grading=f.grading, n_max=5, assoc=True)
    assert rep.simple == "Simple"
    assert [r.codim for r in rep.rows] == [2**n for n in range(1, 6)]
    assert all(r.root == 2 for r in rep.rows)
    assert max(r.d_n for r in rep.rows) == pytest.approx(2)


def test_m2_alternating_shape_never_enters_the_max():
    row = exponent_row(4, load("m2").A, assoc=True)
    assert row.argmax == (2, 1, 1)
    assert row.d_n == pytest.approx(phi([0.5, 0.25, 0.25]))
    assert row.d_n < phi([0.25] * 4)


def test_bounds_hold_on_ut2():
    rep = exponent_report(load("ut2").A, n_max=4)
    for r in rep.rows:
        assert r.colength <= r.colength_bound
        assert r.codim <= r.factorial_bound


def test_report_formats():
    rep = exponent_report(load("f1").A, n_max=2)
    assert rep.to_csv().splitlines()[0] == "n,codim,codim_root,d_n,argmax,colength,colength_bound,factorial_bound"
    assert rep.to_json()["rows"][1]["d_n"] == "1.000000000000"
    assert rep.to_table().splitlines()[1].split()[:2] == ["1", "1"]


def test_parallel_rows_match_serial():
    A = load("ut2").A
    serial = exponent_report(A, n_max=3).to_json()
    assert exponent_report(A, n_max=3, jobs=2).to_json() == serial


def test_bound_violation_is_an_assertion():
    assert issubclass(BoundViolation, AssertionError)
