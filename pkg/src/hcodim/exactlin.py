"""Exact sparse linear algebra over the rationals.

Vectors are sparse ``dict[int, Q]`` maps with no stored zeros.  All
elimination uses the same deterministic rule: rows are consumed in order and
each new independent row pivots on its first (smallest) nonzero column.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from gmpy2 import mpq, next_prime
from typing import Iterable, Mapping, Sequence

# Exact rational scalar used throughout: GMP rationals, always in lowest terms.
Q = mpq
SparseVec = dict  # dict[int, Q]

# 2**62 - 57, the largest prime below 2**62.
DEFAULT_PRIME = 4611686018427387847


def as_rational(x) -> Q:
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to an exact rational."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals")
    if isinstance(x, str):
        x = x.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", x):
            raise ValueError(f"not a rational: {x!r}")
    return Q(x)


def sparse(values: Iterable) -> SparseVec:
    """Dense sequence -> sparse vector."""
    return {i: as_rational(v) for i, v in enumerate(values) if v != 0}


def densify(vec: Mapping[int, Q], length: int) -> list[Q]:
    out = [Q(0)] * length
    for i, v in vec.items():
        out[i] = v
    return out


def axpy(target: SparseVec, coef: Q, vec: Mapping[int, Q]) -> None:
    """In place ``target += coef * vec``, dropping cancelled entries."""
    if not coef:
        return
    for i, v in vec.items():
        new = target.get(i, 0) + coef * v
        if new:
            target[i] = new
        else:
            target.pop(i, None)


@dataclass(frozen=True)
class Matrix:
    """Immutable sparse rational matrix."""

    nrows: int
    ncols: int
    rows: tuple  # tuple of dict[int, Q]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        for r in self.rows:
            for c, v in r.items():
                if not 0 <= c < self.ncols:
                    raise IndexError(f"column {c} out of range for {self.ncols} columns")
                if not v:
                    raise ValueError("stored zero entry")

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, object]], ncols: int) -> "Matrix":
        clean = tuple({c: as_rational(v) for c, v in r.items() if v} for r in rows)
        return cls(len(clean), ncols, clean)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[object]], ncols: int | None = None) -> "Matrix":
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        return cls(len(dense), ncols, tuple(sparse(r) for r in dense))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols, tuple({} for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple({i: Q(1)} for i in range(n)))

    def to_dense(self) -> list[list[Q]]:
        return [densify(r, self.ncols) for r in self.rows]

    def transpose(self) -> "Matrix":
        cols: list[dict] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return Matrix(self.ncols, self.nrows, tuple(cols))

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def triplets(self) -> list[tuple[int, int, str]]:
        """``(row, col, "p/q")`` entries in row-major order."""
        return [(i, j, str(self.rows[i][j])) for i in range(self.nrows) for j in sorted(self.rows[i])]


class Echelon:
    """Incremental reduced row echelon form.

    ``add`` reduces a vector against the stored pivot rows and keeps it when
    something survives.  Pivot rows are kept fully reduced (zero in every other
    pivot column) and normalised to 1 on their pivot.  With ``track=True`` each
    pivot row also carries its expression in terms of the *kept* input vectors,
    which is what ``solve`` needs.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict[int, dict] = {}  # pivot column -> reduced row
        self.combos: dict[int, dict] = {}  # pivot column -> coefficients over kept inputs
        self.kept: list[int] = []  # indices (in add order) of independent inputs
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping[int, Q]) -> tuple[dict, dict]:
        """Return (residual, combo) with ``vec = residual + sum combo[k] * kept_k``."""
        v = dict(vec)
        combo: dict = {}
        for c in [c for c in v if c in self.pivots]:
            coef = v.get(c)
            if not coef:
                continue
            axpy(v, -coef, self.pivots[c])
            if self.track:
                axpy(combo, coef, self.combos[c])
        return v, combo

    def add(self, vec: Mapping[int, Q]) -> bool:
        idx = self._count
        self._count += 1
        v, combo = self.reduce(vec)
        if not v:
            return False
        col = min(v)
        inv = 1 / v[col]
        row = {c: x * inv for c, x in v.items()}
        if self.track:
            # residual = vec - combo, scaled by inv
            new_combo = {k: -x * inv for k, x in combo.items()}
            new_combo[len(self.kept)] = inv
        for c, prow in self.pivots.items():
            coef = prow.get(col)
            if coef:
                axpy(prow, -coef, row)
                if self.track:
                    axpy(self.combos[c], -coef, new_combo)
        self.pivots[col] = row
        if self.track:
            self.combos[col] = new_combo
        self.kept.append(idx)
        return True

    def solve(self, vec: Mapping[int, Q]) -> dict | None:
        """Coefficients over kept inputs reproducing ``vec``, or None."""
        residual, combo = self.reduce(vec)
        if residual:
            return None
        return combo

    def basis_rows(self) -> list[dict]:
        return [self.pivots[c] for c in sorted(self.pivots)]


def _modular_independent_rows(rows: Sequence[Mapping[int, Q]], p: int) -> list[int]:
    """Row indices that are independent modulo ``p``, first-come order."""
    pivots: dict[int, dict] = {}
    chosen = []
    for idx, r in enumerate(rows):
        v = {}
        for c, x in r.items():
            den = x.denominator % p
            if den == 0:
                continue  # unlucky prime for this entry; the exact pass still covers it
            val = x.numerator * pow(den, -1, p) % p
            if val:
                v[c] = val
        for c in [c for c in v if c in pivots]:
            coef = v.get(c)
            if not coef:
                continue
            for j, y in pivots[c].items():
                nv = (v.get(j, 0) - coef * y) % p
                if nv:
                    v[j] = nv
                else:
                    v.pop(j, None)
        if not v:
            continue
        col = min(v)
        inv = pow(v[col], -1, p)
        row = {j: y * inv % p for j, y in v.items()}
        for c, prow in pivots.items():
            coef = prow.get(col)
            if coef:
                for j, y in row.items():
                    nv = (prow.get(j, 0) - coef * y) % p
                    if nv:
                        prow[j] = nv
                    else:
                        prow.pop(j, None)
        pivots[col] = row
        chosen.append(idx)
    return chosen


def random_prime(seed: int | None = None) -> int:
    """A random 62-bit prime, reproducible from ``seed``."""
    rng = random.Random(seed)
    return int(next_prime(rng.randrange(2**61, 2**62)))


def modular_rank(m: Matrix, p: int = DEFAULT_PRIME) -> int:
    """Rank modulo ``p``; never exceeds the exact rank."""
    return len(_modular_independent_rows(m.rows, p))


def rank(m: Matrix, *, modular: bool = False, certify: bool = True, prime: int = DEFAULT_PRIME) -> int:
    """Exact rank over Q.

    ``modular=True`` runs a mod-``prime`` pre-pass to pick pivot rows first;
    with ``certify=False`` it returns the modular rank alone, which is a lower
    bound and must be flagged by the caller.
    """
    if modular:
        chosen = _modular_independent_rows(m.rows, prime)
        if not certify:
            return len(chosen)
        ech = Echelon()
        for i in chosen:
            ech.add(m.rows[i])
        if ech.rank < min(m.nrows, m.ncols):
            seen = set(chosen)
            for i, r in enumerate(m.rows):
                if i not in seen:
                    ech.add(r)
        return ech.rank
    ech = Echelon()
    full = min(m.nrows, m.ncols)
    for r in m.rows:
        ech.add(r)
        if ech.rank == full:
            break
    return ech.rank


def row_space_basis(m: Matrix) -> tuple[list[int], Matrix]:
    """Pivot row indices and the reduced row basis (sorted by pivot column)."""
    ech = Echelon()
    for r in m.rows:
        ech.add(r)
    return list(ech.kept), Matrix.from_rows(ech.basis_rows(), m.ncols)


def solve_in_span(basis: Sequence[Mapping[int, Q] | Sequence], target) -> list[Q] | None:
    """Coefficients ``c`` with ``sum c[i] * basis[i] == target``, or None.

    Accepts dense sequences or sparse dicts.  Dependent basis vectors get
    coefficient 0.
    """
    vecs = [b if isinstance(b, Mapping) else sparse(b) for b in basis]
    tgt = target if isinstance(target, Mapping) else sparse(target)
    ech = Echelon(track=True)
    for v in vecs:
        ech.add(v)
    combo = ech.solve(tgt)
    if combo is None:
        return None
    coeffs = [Q(0)] * len(vecs)
    for k, x in combo.items():
        coeffs[ech.kept[k]] = x
    return coeffs


@dataclass
class SpanSolver:
    """Reusable ``solve_in_span`` against a fixed list of vectors."""

    vectors: list
    _ech: Echelon = field(init=False, repr=False)

    def __post_init__(self):
        self._ech = Echelon(track=True)
        for v in self.vectors:
            self._ech.add(v)

    @property
    def rank(self) -> int:
        return self._ech.rank

    def solve(self, target: Mapping[int, Q]) -> dict | None:
        """Sparse coefficients keyed by index into ``vectors``."""
        combo = self._ech.solve(target)
        if combo is None:
            return None
        return {self._ech.kept[k]: x for k, x in combo.items() if x}


def mat_mul(a: Sequence[Sequence[Q]], b: Sequence[Sequence[Q]]) -> list[list[Q]]:
    """Dense matrix product."""
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Q(0)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence[Q]], v: Sequence[Q]) -> list[Q]:
    return [sum((x * y for x, y in zip(row, v)), Q(0)) for row in a]


def nullspace(m: Matrix) -> list[dict]:
    """Basis of ``{x : m x = 0}`` as sparse vectors, one per free column."""
    ech = Echelon()
    for r in m.rows:
        ech.add(r)
    pivot_cols = set(ech.pivots)
    out = []
    for free in range(m.ncols):
        if free in pivot_cols:
            continue
        x = {free: Q(1)}
        for pc, row in ech.pivots.items():
            coef = row.get(free)
            if coef:
                x[pc] = -coef
        out.append(x)
    return out
