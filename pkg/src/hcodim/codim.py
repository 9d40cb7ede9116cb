"""Evaluation matrices of multilinear spaces and codimensions.

Row ``r`` of an evaluation matrix is the ``r``-th multilinear monomial (in the
order fixed by :mod:`hcodim.freealg`); column ``idx(b) * s + k`` holds the
``k``-th coordinate of its value at ``x_i -> a_{b_i}``, where ``idx`` reads the
tuple ``b`` as a base-``s`` number with ``b_1`` most significant.  A
multilinear polynomial is an identity iff its row combination vanishes, so
the rank is the codimension.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Algebra, GeneralizedHAction, Grading, grading_to_haction
from .exactlin import Echelon, Matrix, rank as exact_rank, Q
from .freealg import (
    Alphabet, Evaluator, Grade, HBasis, HPolynomial, Monomial, enumerate_multilinear_monomials,
    count_multilinear, Leaf, Node,
)
from .generic import is_identity_generic
from .limits import DEFAULT_BUDGET, Budget, CrossCheckMismatch

MODES = ("ordinary", "haction", "graded")


class NotAssociative(ValueError):
    pass


def _associator() -> HPolynomial:
    x1, x2, x3 = (HPolynomial.var(i) for i in (1, 2, 3))
    return (x1 * x2) * x3 - x1 * (x2 * x3)


def check_associative(A: Algebra) -> bool:
    return is_identity_generic(_associator(), A)


@dataclass
class EvaluationMatrix:
    n: int
    mode: str
    assoc: bool
    s: int
    alphabet: Alphabet
    monomials: list
    matrix: Matrix
    _perm_cache: dict = field(default_factory=dict, repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.nrows, self.matrix.ncols

    def _tuple_permutation(self, sigma: Sequence[int]) -> list[int]:
        """Column-block map for ``sigma`` (0-based images, ``sigma[i] = σ(i+1)-1``).

        The value of ``σ·w`` at ``b`` is the value of ``w`` at ``c`` with
        ``c_i = b_{σ(i)}``; returned list maps ``idx(c) -> idx(b)``.
        """
        key = tuple(sigma)
        hit = self._perm_cache.get(key)
        if hit is not None:
            return hit
        n, s = self.n, self.s
        weights = [s ** (n - 1 - i) for i in range(n)]
        out = [0] * (s**n)
        for ci in range(s**n):
            c = []
            rem = ci
            for w in weights:
                c.append(rem // w)
                rem %= w
            b = [0] * n
            for i in range(n):
                b[sigma[i]] = c[i]
            out[ci] = sum(x * w for x, w in zip(b, weights))
        self._perm_cache[key] = out
        return out

    def permute_row(self, row: dict, sigma: Sequence[int]) -> dict:
        """Evaluation vector of ``σ·w`` from that of ``w``."""
        perm = self._tuple_permutation(sigma)
        s = self.s
        return {perm[col // s] * s + col % s: x for col, x in row.items()}

    def row_of(self, poly: HPolynomial) -> dict:
        """Evaluation vector of a polynomial in the span of the rows."""
        index = {m: i for i, m in enumerate(self.monomials)}
        out: dict = {}
        for m, c in poly.terms.items():
            for col, x in self.matrix.rows[index[m]].items():
                v = out.get(col, 0) + c * x
                if v:
                    out[col] = v
                else:
                    out.pop(col, None)
        return out


@dataclass
class QuotientBasis:
    """Original monomials whose classes form a basis of the quotient by identities."""

    pivots: list  # row indices
    monomials: list
    rows: list  # their evaluation vectors
    reduced: list = field(repr=False, default_factory=list)  # fully reduced echelon rows
    echelon: Echelon | None = field(repr=False, default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.pivots)


def decorations_for(mode: str, act: GeneralizedHAction | None, grading: Grading | None):
    if mode == "ordinary":
        return [None], Alphabet()
    if mode == "haction":
        if act is None:
            raise ValueError("haction mode needs an H-action")
        return [HBasis(j) for j in range(act.hdim)], Alphabet.for_action(act)
    if mode == "graded":
        if grading is None:
            raise ValueError("graded mode needs a grading")
        return [Grade(t) for t in grading.support], Alphabet.for_grading(grading)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def evaluation_matrix(
    n: int,
    A: Algebra,
    act: GeneralizedHAction | None = None,
    grading: Grading | None = None,
    *,
    mode: str | None = None,
    assoc: bool = False,
    budget: Budget = DEFAULT_BUDGET,
) -> EvaluationMatrix:
    if mode is None:
        mode = "haction" if act is not None else ("graded" if grading is not None else "ordinary")
    decs, alphabet = decorations_for(mode, act, grading)
    budget.check_degree(n, assoc=assoc, decorated=mode != "ordinary")
    budget.check_rows(count_multilinear(n, len(decs), assoc))
    if assoc and not check_associative(A):
        raise NotAssociative(f"{A.name} is not associative; associative mode is not allowed")
    monomials = enumerate_multilinear_monomials(n, decs, assoc=assoc, cap=None)
    if mode == "graded":
        ev = Evaluator(A, grading=grading, mode="graded")
    else:
        ev = Evaluator(A, act=act)
    s = A.dim
    weights = [s ** (n - 1 - i) for i in range(n)]
    rows = []
    for m in monomials:
        row = {}
        for b, vec in ev.by_variable(m, n).items():
            base = sum(x * w for x, w in zip(b, weights)) * s
            for k, x in vec.items():
                row[base + k] = x
        rows.append(row)
    return EvaluationMatrix(n, mode, assoc, s, alphabet, monomials, Matrix(len(rows), s**n * s, tuple(rows)))


def quotient_basis(E: EvaluationMatrix) -> QuotientBasis:
    ech = Echelon()
    for r in E.matrix.rows:
        ech.add(r)
    pivots = list(ech.kept)
    return QuotientBasis(
        pivots, [E.monomials[i] for i in pivots], [E.matrix.rows[i] for i in pivots], ech.basis_rows(), ech,
    )


def codimension(
    n: int,
    A: Algebra,
    act: GeneralizedHAction | None = None,
    grading: Grading | None = None,
    *,
    mode: str | None = None,
    assoc: bool = False,
    budget: Budget = DEFAULT_BUDGET,
    modular: bool = False,
    certify: bool = True,
) -> int:
    E = evaluation_matrix(n, A, act, grading, mode=mode, assoc=assoc, budget=budget)
    return exact_rank(E.matrix, modular=modular, certify=certify)


def graded_codimension(
    n: int,
    A: Algebra,
    grading: Grading,
    *,
    assoc: bool = False,
    budget: Budget = DEFAULT_BUDGET,
) -> int:
    """Graded codimension, computed directly and through the induced action."""
    direct = codimension(n, A, grading=grading, mode="graded", assoc=assoc, budget=budget)
    act = grading_to_haction(A, grading)
    via_action = codimension(n, A, act, mode="haction", assoc=assoc, budget=budget)
    if direct != via_action:
        raise CrossCheckMismatch(f"graded codimension {direct} != F^T codimension {via_action} at n={n}")
    return direct


def write_triplets(E: EvaluationMatrix, path) -> None:
    """Sparse-triplet dump: a header line, then ``row col p/q`` per entry."""
    with open(path, "w") as fh:
        fh.write(f"%hcodim-triplets format=1 n={E.n} mode={E.mode} assoc={int(E.assoc)} "
                 f"rows={E.matrix.nrows} cols={E.matrix.ncols}\n")
        for r, c, q in E.matrix.triplets():
            fh.write(f"{r} {c} {q}\n")


def read_triplets(path) -> Matrix:
    with open(path) as fh:
        header = fh.readline().split()
        meta = dict(tok.split("=", 1) for tok in header[1:])
        rows: list[dict] = [{} for _ in range(int(meta["rows"]))]
        for line in fh:
            r, c, q = line.split()
            rows[int(r)][int(c)] = Q(q)
    return Matrix(len(rows), int(meta["cols"]), tuple(rows))
