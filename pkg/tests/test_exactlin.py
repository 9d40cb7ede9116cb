from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hcodim.exactlin import (
    Echelon, Matrix, Q, SpanSolver, as_rational, modular_rank, nullspace, random_prime, rank,
    row_space_basis, solve_in_span, mat_vec,
)

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_dim=5):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    # bias toward zeros so low-rank matrices show up
    entry = st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), small_rationals)
    return Matrix.from_dense([[draw(entry) for _ in range(c)] for _ in range(r)], c)


def test_rank_examples():
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix.zeros(4, 7)) == 0
    assert rank(Matrix.from_dense([[1, 2], [2, 4]])) == 1


def test_row_space_basis_examples():
    assert row_space_basis(Matrix.from_dense([[1, 0], [0, 1], [1, 1]]))[0] == [0, 1]
    assert row_space_basis(Matrix.zeros(3, 3))[0] == []
    pivots, reduced = row_space_basis(Matrix.from_dense([[2, 4], [1, 2], [0, 3]]))
    assert pivots == [0, 2]
    assert reduced.to_dense() == [[1, 0], [0, 1]]


def test_solve_in_span_examples():
    assert solve_in_span([(1, 0), (0, 1)], (3, 5)) == [3, 5]
    assert solve_in_span([(1, 1)], (1, 2)) is None
    assert solve_in_span([(2, 0), (1, 1)], (1, -1)) == [1, -1]


def test_dependent_basis_vectors_get_zero():
    assert solve_in_span([(1, 0), (2, 0), (0, 1)], (4, 1)) == [4, 0, 1]


def test_as_rational():
    assert as_rational("-3/4") == Fraction(-3, 4)
    assert as_rational(" 5 ") == 5
    assert as_rational(Fraction(1, 3)) == Q(1, 3)
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(ValueError):
        as_rational("1/2/3")


def test_random_prime_is_reproducible_62_bit():
    p = random_prime(7)
    assert p == random_prime(7)
    assert 2**61 <= p < 2**62 + 200


@given(matrices())
def test_rank_transpose_invariant(m):
    assert rank(m) == rank(m.transpose())


@given(matrices())
def test_rank_bounded_by_shape(m):
    assert rank(m) <= min(m.nrows, m.ncols)


@given(matrices(), st.randoms(use_true_random=False), st.lists(st.integers(1, 5), min_size=5, max_size=5))
def test_rank_invariant_under_row_operations(m, rnd, scales):
    rows = [dict(r) for r in m.rows]
    rnd.shuffle(rows)
    scaled = [{k: v * scales[i % 5] for k, v in r.items()} for i, r in enumerate(rows)]
    assert rank(Matrix.from_rows(scaled, m.ncols)) == rank(m)


@given(matrices())
def test_row_space_basis_spans(m):
    pivots, reduced = row_space_basis(m)
    assert reduced.nrows == len(pivots) == rank(m)
    for r in m.rows:
        assert solve_in_span(list(reduced.rows), r) is not None


@given(matrices())
def test_modular_rank_never_exceeds_exact(m):
    exact = rank(m)
    assert modular_rank(m) <= exact
    assert modular_rank(m, 5) <= exact
    assert rank(m, modular=True) == exact


@given(matrices())
def test_nullspace_dimension_and_kernel(m):
    kernel = nullspace(m)
    assert len(kernel) == m.ncols - rank(m)
    dense = m.to_dense()
    for v in kernel:
        vec = [v.get(j, 0) for j in range(m.ncols)]
        assert all(x == 0 for x in mat_vec(dense, vec))


@given(matrices())
def test_span_solver_reconstructs(m):
    solver = SpanSolver(list(m.rows))
    assert solver.rank == rank(m)
    for r in m.rows:
        combo = solver.solve(r)
        back = {}
        for i, c in combo.items():
            for k, x in m.rows[i].items():
                back[k] = back.get(k, 0) + c * x
        assert {k: v for k, v in back.items() if v} == dict(r)


def test_echelon_reduce_tracks_combination():
    ech = Echelon(track=True)
    ech.add({0: Q(1), 1: Q(1)})
    ech.add({1: Q(2)})
    residual, combo = ech.reduce({0: Q(3), 1: Q(7)})
    assert residual == {}
    assert combo == {0: 3, 1: 2}
