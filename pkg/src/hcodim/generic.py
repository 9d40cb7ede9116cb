"""Evaluation at generic elements.

For ``k`` generic elements of an ``s``-dimensional algebra we work in
``A ⊗ Q[xi_ij]`` with ``xi_j = sum_i a_i ⊗ xi_ij``.  A polynomial vanishes on
``A`` exactly when its value at ``xi_1..xi_k`` is the zero vector of
polynomials, so this is an identity test that needs no multilinearity and no
sampling.

Polynomials are ``{exponent tuple: Q}`` with the exponent of
``xi_ij`` at position ``(i - 1) * k + (j - 1)``.
"""
from __future__ import annotations

import itertools
from typing import Mapping, Sequence

from .algebra import Algebra, GeneralizedHAction, Grading
from .exactlin import Echelon, Q
from .freealg import (
    Decoration, DecorationMismatch, Grade, HBasis, HPolynomial, Leaf, Monomial, Node, shapes, _fill,
)

Poly = dict  # exponent tuple -> Q
PolyVec = dict  # coordinate -> nonzero Poly


def poly_add_scaled(target: Poly, coef: Q, p: Poly) -> None:
    for e, x in p.items():
        v = target.get(e, 0) + coef * x
        if v:
            target[e] = v
        else:
            target.pop(e, None)


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, x in p.items():
        for e2, y in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + x * y
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


class GenericEvaluationRing:
    """Coordinate vectors over ``Q[xi_ij]`` for a fixed algebra and action."""

    def __init__(self, A: Algebra, k: int, act: GeneralizedHAction | None = None,
                 grading: Grading | None = None):
        self.A = A
        self.k = k
        self.s = A.dim
        self.act = act
        self.grading = grading
        self.nvars = self.s * k
        self._memo: dict = {}

    def xi(self, j: int) -> PolyVec:
        """The generic element ``xi_j`` (1-based)."""
        if not 1 <= j <= self.k:
            raise ValueError(f"generic element index {j} outside 1..{self.k}")
        out = {}
        for i in range(self.s):
            e = [0] * self.nvars
            e[i * self.k + (j - 1)] = 1
            out[i] = {tuple(e): Q(1)}
        return out

    def act_on(self, dec: Decoration, u: PolyVec) -> PolyVec:
        if dec is None:
            return u
        if isinstance(dec, HBasis):
            if self.act is None or dec.index >= self.act.hdim:
                raise DecorationMismatch(f"decoration h{dec.index} has no matching H-action")
            mat = self.act.rho[dec.index]
            out: PolyVec = {}
            for c, p in u.items():
                for r in range(self.s):
                    if mat[r][c]:
                        poly_add_scaled(out.setdefault(r, {}), mat[r][c], p)
            return {r: p for r, p in out.items() if p}
        if self.grading is None:
            raise DecorationMismatch("grade decoration without a grading")
        return {c: p for c, p in u.items() if self.grading.degree[c] == dec.index}

    def mul(self, u: PolyVec, v: PolyVec) -> PolyVec:
        out: PolyVec = {}
        prods = self.A.products
        for i, p in u.items():
            for j, q in v.items():
                sc = prods.get((i, j))
                if not sc:
                    continue
                pq = poly_mul(p, q)
                for kk, c in sc.items():
                    poly_add_scaled(out.setdefault(kk, {}), c, pq)
        return {r: p for r, p in out.items() if p}

    def evaluate_monomial(self, m: Monomial) -> PolyVec:
        hit = self._memo.get(m)
        if hit is not None:
            return hit
        if isinstance(m, Leaf):
            out = self.act_on(m.dec, self.xi(m.var))
        else:
            out = self.mul(self.evaluate_monomial(m.left), self.evaluate_monomial(m.right))
        self._memo[m] = out
        return out

    def evaluate(self, f: HPolynomial) -> PolyVec:
        out: PolyVec = {}
        for m, c in f.terms.items():
            for r, p in self.evaluate_monomial(m).items():
                poly_add_scaled(out.setdefault(r, {}), c, p)
        return {r: p for r, p in out.items() if p}


def is_identity_generic(
    f: HPolynomial,
    A: Algebra,
    act: GeneralizedHAction | None = None,
    grading: Grading | None = None,
) -> bool:
    """True iff ``f`` evaluated at generic elements is the zero polynomial vector."""
    k = max(f.variables(), default=1)
    ring = GenericEvaluationRing(A, k, act, grading)
    return not ring.evaluate(f)


def generic_span_dimension(
    A: Algebra,
    k: int,
    n: int,
    act: GeneralizedHAction | None = None,
    decorations: Sequence[Decoration] = (None,),
) -> int:
    """Dimension of the span of all degree-``n`` products of decorated generic elements.

    Every bracketing, every choice of generic elements ``xi_1..xi_k`` and every
    decoration is included; the rank is taken over the basis
    ``a_l ⊗ (monomial in xi)``.
    """
    ring = GenericEvaluationRing(A, k, act)
    leaves_pool = [Leaf(j, d) for j in range(1, k + 1) for d in decorations]
    index: dict = {}
    ech = Echelon()
    for shape in shapes(n):
        for choice in itertools.product(leaves_pool, repeat=n):
            vec = ring.evaluate_monomial(_fill(shape, iter(choice)))
            row = {}
            for r, p in vec.items():
                for e, x in p.items():
                    row[index.setdefault((r, e), len(index))] = x
            ech.add(row)
    return ech.rank


def colength_type_bound(s: int, n: int, k: int) -> int:
    """``s (n+1)^(k s)``, the bound on that span dimension."""
    return s * (n + 1) ** (k * s)
