"""Symmetric group machinery and cocharacters of multilinear quotients.

Permutations of ``{1..n}`` are stored 0-based: ``sigma[i]`` is the image of
``i + 1`` minus one.  Products compose right to left, ``(σ τ)(i) = σ(τ(i))``,
and ``S_n`` acts on monomials on the left by renaming ``x_i -> x_σ(i)``.
"""
from __future__ import annotations

import csv
import io
import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

from .algebra import Algebra, GeneralizedHAction, Grading
from .codim import EvaluationMatrix, QuotientBasis, evaluation_matrix, quotient_basis
from .exactlin import Echelon, axpy, Q
from .freealg import Monomial, degree, leaves, relabel
from .limits import DEFAULT_BUDGET, Budget, CrossCheckMismatch

Partition = tuple  # weakly decreasing positive ints
Perm = tuple


# --- partitions and tableaux -----------------------------------------------------


def partitions(n: int, max_height: int | None = None) -> list[Partition]:
    """Partitions of ``n`` with at most ``max_height`` parts, lexicographically descending."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cap = n if max_height is None else max_height

    def gen(rest: int, largest: int, parts: int) -> Iterator[tuple]:
        if rest == 0:
            yield ()
            return
        if parts == 0:
            return
        for first in range(min(rest, largest), 0, -1):
            for tail in gen(rest - first, first, parts - 1):
                yield (first,) + tail

    return list(gen(n, n, cap))


def conjugate(shape: Partition) -> Partition:
    return tuple(sum(1 for r in shape if r > j) for j in range(shape[0])) if shape else ()


def hook_lengths(shape: Partition) -> list[list[int]]:
    cols = conjugate(shape)
    return [[shape[i] - j + cols[j] - i - 1 for j in range(shape[i])] for i in range(len(shape))]


@lru_cache(maxsize=None)
def dim_irreducible(shape: Partition) -> int:
    """Dimension of the irreducible module by the hook length formula."""
    n = sum(shape)
    return factorial(n) // prod(h for row in hook_lengths(shape) for h in row)


def standard_tableaux(shape: Partition) -> Iterator[tuple]:
    """All standard fillings (rows of 1-based entries), by placing ``n`` last."""
    n = sum(shape)
    if n == 0:
        yield ()
        return
    for i, row_len in enumerate(shape):
        below = shape[i + 1] if i + 1 < len(shape) else 0
        if row_len > below:  # removable corner
            smaller = list(shape)
            smaller[i] -= 1
            smaller = tuple(r for r in smaller if r)
            for t in standard_tableaux(smaller):
                rows = [list(r) for r in t] + [[] for _ in range(len(shape) - len(t))]
                rows[i].append(n)
                yield tuple(tuple(r) for r in rows)


def multinomial(n: int, parts: Sequence[int]) -> int:
    return factorial(n) // prod(factorial(p) for p in parts)


@dataclass(frozen=True)
class YoungTableau:
    """Tableau with the canonical row-major consecutive filling."""

    shape: Partition

    @property
    def n(self) -> int:
        return sum(self.shape)

    @property
    def rows(self) -> tuple:
        out, start = [], 1
        for r in self.shape:
            out.append(tuple(range(start, start + r)))
            start += r
        return tuple(out)

    @property
    def columns(self) -> tuple:
        rows = self.rows
        return tuple(tuple(row[j] for row in rows if len(row) > j) for j in range(self.shape[0]))


# --- permutations and the group algebra --------------------------------------------


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(sigma: Perm, tau: Perm) -> Perm:
    """``σ τ``: apply ``τ`` first."""
    return tuple(sigma[t] for t in tau)


def inverse(sigma: Perm) -> Perm:
    out = [0] * len(sigma)
    for i, x in enumerate(sigma):
        out[x] = i
    return tuple(out)


def sign(sigma: Perm) -> int:
    seen = [False] * len(sigma)
    parity = 0
    for i in range(len(sigma)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = sigma[j]
                length += 1
            parity += length - 1
    return -1 if parity % 2 else 1


def from_cycles(n: int, *cycles: Sequence[int]) -> Perm:
    """Permutation from 1-based cycles, e.g. ``from_cycles(3, (1, 3, 2))``."""
    out = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + type(cyc)(cyc[:1])):
            out[a - 1] = b - 1
    return tuple(out)


def cycle_type(sigma: Perm) -> Partition:
    seen = [False] * len(sigma)
    lengths = []
    for i in range(len(sigma)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = sigma[j]
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def class_representative(mu: Partition) -> Perm:
    n = sum(mu)
    out = list(range(n))
    start = 0
    for length in mu:
        for k in range(length):
            out[start + k] = start + (k + 1) % length
        start += length
    return tuple(out)


def centralizer_order(mu: Partition) -> int:
    """``z_μ = prod i^(m_i) m_i!``."""
    return prod(i**m * factorial(m) for i, m in Counter(mu).items())


def class_size(mu: Partition) -> int:
    return factorial(sum(mu)) // centralizer_order(mu)


class GroupAlgebraElement:
    """Finite rational combination of permutations."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {p: Q(c) for p, c in (coeffs or {}).items() if c}

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return GroupAlgebraElement({p: c * other for p, c in self.coeffs.items()})
        out: dict = {}
        for p, a in self.coeffs.items():
            for q, b in other.coeffs.items():
                axpy(out, Q(1), {compose(p, q): a * b})
        return GroupAlgebraElement(out)

    __rmul__ = lambda self, other: self * other  # scalars only

    def __add__(self, other):
        out = dict(self.coeffs)
        axpy(out, Q(1), other.coeffs)
        return GroupAlgebraElement(out)

    def __sub__(self, other):
        return self + other * -1

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and self.coeffs == other.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"GroupAlgebraElement({len(self.coeffs)} terms)"


def _subgroup(blocks: Sequence[Sequence[int]], n: int) -> Iterator[Perm]:
    """All permutations preserving each block (1-based), i.e. the product of their symmetric groups."""
    per_block = [list(itertools.permutations(b)) for b in blocks]
    for choice in itertools.product(*per_block):
        out = list(range(n))
        for block, image in zip(blocks, choice):
            for a, b in zip(block, image):
                out[a - 1] = b - 1
        yield tuple(out)


def young_symmetrizer(T: YoungTableau, variant: str = "e") -> GroupAlgebraElement:
    """``e = a b`` (or ``e* = b a``) with ``a`` the row sum and ``b`` the signed column sum."""
    a = GroupAlgebraElement({p: 1 for p in _subgroup(T.rows, T.n)})
    b = GroupAlgebraElement({p: sign(p) for p in _subgroup(T.columns, T.n)})
    if variant == "e":
        return a * b
    if variant in ("e*", "estar"):
        return b * a
    raise ValueError("variant must be 'e' or 'e*'")


def symmetrizer_size(shape: Partition) -> int:
    return prod(factorial(r) for r in shape) * prod(factorial(c) for c in conjugate(shape))


def sn_act(sigma: Perm, m: Monomial) -> Monomial:
    """Rename ``x_i`` to ``x_σ(i)``; brackets and decorations stay in their slots."""
    n = len(sigma)
    if degree(m) != n:
        raise ValueError(f"permutation of {n} points applied to a monomial of degree {degree(m)}")
    return relabel(m, {i + 1: sigma[i] + 1 for i in range(n)})


# --- characters -------------------------------------------------------------------


@lru_cache(maxsize=None)
def _mn(beta: tuple, mu: tuple) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for x in beta if nb < x < b)
        new = tuple(sorted((bset - {b}) | {nb}, reverse=True))
        total += (-1) ** height * _mn(new, rest)
    return total


def irreducible_character(shape: Partition, mu: Partition) -> int:
    """Character value at cycle type ``mu`` by border-strip removal (on beta-sets)."""
    if sum(shape) != sum(mu):
        raise ValueError("shape and class must be partitions of the same n")
    k = len(shape)
    beta = tuple(shape[i] + (k - 1 - i) for i in range(k))
    return _mn(beta, tuple(sorted(mu, reverse=True)))


# --- cocharacters -----------------------------------------------------------------


def apply_group_element(E: EvaluationMatrix, g: GroupAlgebraElement, row: dict) -> dict:
    out: dict = {}
    for sigma, c in g.coeffs.items():
        axpy(out, c, E.permute_row(row, sigma))
    return out


def module_generators(E: EvaluationMatrix) -> list[int]:
    """Rows whose leaves read ``x_1 .. x_n`` in order.

    Every multilinear monomial is ``σ`` applied to exactly one of these, so
    they generate the whole row space as an ``S_n``-module.
    """
    target = list(range(1, E.n + 1))
    return [i for i, m in enumerate(E.monomials) if [l.var for l in leaves(m)] == target]


@lru_cache(maxsize=None)
def right_ideal_basis(shape: Partition) -> tuple:
    """Elements ``e σ`` forming a basis of the right ideal ``e FS_n`` (``e`` the symmetrizer)."""
    shape = tuple(shape)
    n = sum(shape)
    e = young_symmetrizer(YoungTableau(shape))
    target = dim_irreducible(shape)
    index: dict = {}
    ech = Echelon()
    out = []
    for sigma in itertools.permutations(range(n)):
        g = GroupAlgebraElement({compose(p, sigma): c for p, c in e.coeffs.items()})
        if ech.add({index.setdefault(p, len(index)): c for p, c in g.coeffs.items()}):
            out.append(g)
            if len(out) == target:
                break
    if len(out) != target:
        raise CrossCheckMismatch(f"right ideal of {shape} has dimension {len(out)}, expected {target}")
    return tuple(out)


def multiplicity(shape: Partition, E: EvaluationMatrix) -> int:
    """``dim e_T (W / W ∩ Id)`` as the rank of ``{e σ_i · g}``.

    ``σ_i`` runs over a basis of ``e FS_n`` and ``g`` over the module generators,
    which span ``e_T`` applied to the whole quotient.
    """
    if sum(shape) != E.n:
        raise ValueError("partition does not match the degree of the evaluation matrix")
    ech = Echelon()
    gens = [E.matrix.rows[i] for i in module_generators(E)]
    for g in right_ideal_basis(tuple(shape)):
        for row in gens:
            ech.add(apply_group_element(E, g, row))
    return ech.rank


def multiplicity_on_basis(shape: Partition, E: EvaluationMatrix, basis: QuotientBasis | None = None) -> int:
    """Same quantity, by applying the symmetrizer to every quotient basis vector (slow reference)."""
    if sum(shape) != E.n:
        raise ValueError("partition does not match the degree of the evaluation matrix")
    basis = basis or quotient_basis(E)
    e = young_symmetrizer(YoungTableau(tuple(shape)))
    ech = Echelon()
    for row in basis.rows:
        ech.add(apply_group_element(E, e, row))
    return ech.rank


def _generators_of_sn(n: int) -> list[Perm]:
    if n < 2:
        return []
    return [(1, 0) + tuple(range(2, n)), tuple(range(1, n)) + (0,)]


def character_traces(E: EvaluationMatrix, basis: QuotientBasis | None = None) -> dict:
    """Trace of each class representative on the quotient, keyed by cycle type.

    The fully reduced echelon rows ``r_i`` (pivot ``p_i``) give coordinates by
    reading pivot entries, so ``tr σ = Σ_i (σ r_i)[p_i]``.  Invariance of the
    span is verified for a generating set of ``S_n`` first.
    """
    basis = basis or quotient_basis(E)
    ech = basis.echelon
    if ech is None:
        ech = Echelon()
        for r in basis.rows:
            ech.add(r)
    for sigma in _generators_of_sn(E.n):
        for row in basis.rows:
            if ech.solve(E.permute_row(row, sigma)) is None:
                raise CrossCheckMismatch(f"permuted basis vector left the quotient ({sigma})")
    s = E.s
    traces = {}
    for mu in partitions(E.n):
        perm = E._tuple_permutation(class_representative(mu))
        inv = [0] * len(perm)
        for c, b in enumerate(perm):
            inv[b] = c
        tr = Q(0)
        for p, row in ech.pivots.items():
            tr += row.get(inv[p // s] * s + p % s, 0)
        traces[mu] = tr
    return traces


def multiplicities_from_traces(n: int, traces: dict) -> dict:
    out = {}
    for shape in partitions(n):
        total = sum(class_size(mu) * irreducible_character(shape, mu) * traces[mu] for mu in traces)
        m = Q(total, factorial(n))
        if m.denominator != 1 or m < 0:
            raise CrossCheckMismatch(f"character inner product for {shape} is {m}")
        out[shape] = int(m)
    return out


@dataclass
class CocharacterReport:
    n: int
    s: int
    codimension: int
    entries: list  # (shape, multiplicity, dim_irr) for height <= s, descending
    colength: int
    method: str  # "both" | "character-only"
    traces: dict = field(default_factory=dict)
    overtall: dict = field(default_factory=dict)  # shape -> multiplicity, explicitly computed

    def multiplicity(self, shape: Partition) -> int:
        for lam, m, _ in self.entries:
            if lam == tuple(shape):
                return m
        if tuple(shape) in self.overtall:
            return self.overtall[tuple(shape)]
        raise KeyError(shape)

    def nonzero(self) -> list:
        return [(lam, m, d) for lam, m, d in self.entries if m]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "codimension": self.codimension,
            "colength": self.colength,
            "method": self.method,
            "cocharacter": [
                {"lambda": list(lam), "multiplicity": m, "dim_irr": d} for lam, m, d in self.entries
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "lambda", "multiplicity", "dim_irr"])
        for lam, m, d in self.entries:
            w.writerow([self.n, " ".join(map(str, lam)), m, d])
        return buf.getvalue()

    def to_table(self) -> str:
        cells = [["lambda", "multiplicity", "dim_irr"]]
        cells += [[" ".join(map(str, lam)), str(m), str(d)] for lam, m, d in self.entries]
        widths = [max(len(row[i]) for row in cells) for i in range(3)]
        lines = [f"n={self.n} codimension={self.codimension} colength={self.colength} method={self.method}"]
        lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
        return "\n".join(lines) + "\n"


def cocharacter_report(
    n: int,
    A: Algebra,
    act: GeneralizedHAction | None = None,
    grading: Grading | None = None,
    *,
    mode: str | None = None,
    assoc: bool = False,
    budget: Budget = DEFAULT_BUDGET,
    E: EvaluationMatrix | None = None,
    overtall: Sequence[Partition] = (),
) -> CocharacterReport:
    """Cocharacter by Young symmetrizers, cross-checked against character traces."""
    E = E or evaluation_matrix(n, A, act, grading, mode=mode, assoc=assoc, budget=budget)
    basis = quotient_basis(E)
    s = A.dim
    traces = character_traces(E, basis)
    from_chars = multiplicities_from_traces(n, traces)
    shapes = partitions(n, s)
    method = "both"
    entries = []
    for lam in shapes:
        if symmetrizer_size(lam) <= budget.max_symmetrizer_terms:
            m = multiplicity(lam, E)
            if m != from_chars[lam]:
                raise CrossCheckMismatch(f"m{lam}: symmetrizer {m} vs characters {from_chars[lam]}")
        else:
            m = from_chars[lam]
            method = "character-only"
        entries.append((lam, m, dim_irreducible(lam)))
    tall = {}
    for lam in overtall:
        lam = tuple(lam)
        if len(lam) <= s or sum(lam) != n:
            raise ValueError(f"{lam} is not an over-tall partition of {n} for dim {s}")
        tall[lam] = multiplicity(lam, E)
        if tall[lam] != from_chars[lam]:
            raise CrossCheckMismatch(f"m{lam}: symmetrizer {tall[lam]} vs characters {from_chars[lam]}")
    total = sum(m * d for _, m, d in entries)
    if total != basis.size:
        raise CrossCheckMismatch(f"sum m*dim = {total} but codimension is {basis.size}")
    hidden = {lam: m for lam, m in from_chars.items() if len(lam) > s and m}
    if hidden:
        raise CrossCheckMismatch(f"nonzero multiplicities above height {s}: {hidden}")
    return CocharacterReport(
        n=n, s=s, codimension=basis.size, entries=entries, colength=sum(m for _, m, _ in entries),
        method=method, traces=traces, overtall=tall,
    )


def tuple_space_multiplicity(shape: Partition, s: int) -> int:
    """Multiplicity of ``M(λ)`` in the permutation module on ``{0..s-1}^n``.

    The evaluation rows of any ``s``-dimensional algebra live in ``s`` copies of
    this module (one per output coordinate), so ``s`` times this number bounds
    every multiplicity in degree ``n``, for every action and grading.  It is
    computed as the rank of ``e_T`` applied to all point masses.
    """
    n = sum(shape)
    e = young_symmetrizer(YoungTableau(tuple(shape)))
    weights = [s ** (n - 1 - i) for i in range(n)]
    ech = Echelon()
    for b in itertools.product(range(s), repeat=n):
        vec: dict = {}
        for sigma, c in e.coeffs.items():
            # σ·δ_b = δ_{b'} with b'_{σ(i)} = b_i, matching EvaluationMatrix.permute_row
            image = [0] * n
            for i in range(n):
                image[sigma[i]] = b[i]
            idx = sum(x * w for x, w in zip(image, weights))
            v = vec.get(idx, 0) + c
            if v:
                vec[idx] = v
            else:
                vec.pop(idx, None)
        ech.add(vec)
    return ech.rank


def colength_bound(s: int, n: int) -> int:
    """``s (n+1)^(s^2 + s)``."""
    return s * (n + 1) ** (s * s + s)
