"""Free nonassociative algebra with decorated variables.

Monomials are full binary trees.  A leaf is a variable ``x_i`` (``i >= 1``)
optionally carrying a decoration: an H-basis element (``x_i^hj``) or a grade
label (``x_i^(t)``).  Decorations sit on leaves, so one variable may appear
with different decorations inside one polynomial.

Enumeration order of multilinear monomials (used for every matrix row order):

1. bracketing shape, where shapes with a smaller left subtree come first,
   recursively (for n = 3: ``x*(x*x)`` before ``(x*x)*x``);
2. permutation of ``1..n`` read left to right along the leaves, lexicographic;
3. decoration tuple along the leaves, lexicographic in alphabet order.

Associative mode uses the single left-normed shape.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, Mapping, NamedTuple, Sequence, Union

from .algebra import Algebra, GeneralizedHAction, Grading, apply
from .exactlin import as_rational, axpy, Q
from .limits import BudgetExceeded

ONE = Q(1)


class NotMultilinear(ValueError):
    pass


class UnassignedVariable(KeyError):
    pass


class DecorationMismatch(ValueError):
    pass


@dataclass(frozen=True)
class HBasis:
    index: int


@dataclass(frozen=True)
class Grade:
    index: int


Decoration = Union[HBasis, Grade, None]


class Leaf(NamedTuple):
    var: int
    dec: Decoration = None


class Node(NamedTuple):
    left: "Monomial"
    right: "Monomial"


Monomial = Union[Leaf, Node]


def leaves(m: Monomial) -> list[Leaf]:
    if isinstance(m, Leaf):
        return [m]
    return leaves(m.left) + leaves(m.right)


def degree(m: Monomial) -> int:
    return 1 if isinstance(m, Leaf) else degree(m.left) + degree(m.right)


def is_multilinear_monomial(m: Monomial, n: int | None = None) -> bool:
    vs = sorted(l.var for l in leaves(m))
    n = len(vs) if n is None else n
    return vs == list(range(1, n + 1))


def skeleton(m: Monomial) -> Monomial:
    """The monomial with every variable index replaced by 0."""
    if isinstance(m, Leaf):
        return Leaf(0, m.dec)
    return Node(skeleton(m.left), skeleton(m.right))


def relabel(m: Monomial, mapping: Mapping[int, int]) -> Monomial:
    """Rename variables, keeping brackets and decorations in place."""
    if isinstance(m, Leaf):
        return Leaf(mapping[m.var], m.dec)
    return Node(relabel(m.left, mapping), relabel(m.right, mapping))


# --- decoration alphabets --------------------------------------------------------


@dataclass(frozen=True)
class Alphabet:
    """Names for decorations: ``kind`` is None, ``"h"`` or ``"grade"``."""

    kind: str | None = None
    labels: tuple = ()

    @property
    def size(self) -> int:
        return len(self.labels) if self.kind else 1

    def decorations(self) -> list[Decoration]:
        if self.kind == "h":
            return [HBasis(j) for j in range(len(self.labels))]
        if self.kind == "grade":
            return [Grade(t) for t in range(len(self.labels))]
        return [None]

    def show(self, dec: Decoration) -> str:
        if dec is None:
            return ""
        if isinstance(dec, HBasis):
            return f"^h{dec.index}"
        label = self.labels[dec.index] if self.kind == "grade" and dec.index < len(self.labels) else dec.index
        return f"^({label})"

    @classmethod
    def for_action(cls, act: GeneralizedHAction) -> "Alphabet":
        return cls("h", tuple(act.hbasis))

    @classmethod
    def for_grading(cls, g: Grading) -> "Alphabet":
        return cls("grade", tuple(g.labels))


# --- polynomials ---------------------------------------------------------------


def monomial_text(m: Monomial, alphabet: Alphabet = Alphabet()) -> str:
    if isinstance(m, Leaf):
        return f"x{m.var}{alphabet.show(m.dec)}"

    def atom(t):
        s = monomial_text(t, alphabet)
        return s if isinstance(t, Leaf) else f"({s})"

    return f"{atom(m.left)}*{atom(m.right)}"


class HPolynomial:
    """Finite rational combination of monomials; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict = {}
        for m, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        self.terms = clean

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> "HPolynomial":
        return cls({m: coeff})

    @classmethod
    def var(cls, i: int, dec: Decoration = None) -> "HPolynomial":
        return cls({Leaf(i, dec): 1})

    def __add__(self, other: "HPolynomial") -> "HPolynomial":
        out = dict(self.terms)
        axpy(out, ONE, other.terms)
        return HPolynomial(out)

    def __neg__(self) -> "HPolynomial":
        return HPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "HPolynomial") -> "HPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HPolynomial):
            out: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    axpy(out, ONE, {Node(m1, m2): c1 * c2})
            return HPolynomial(out)
        c = as_rational(other)
        return HPolynomial({m: c * x for m, x in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        return isinstance(other, HPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"HPolynomial({self.to_text()!r})"

    def variables(self) -> set[int]:
        return {l.var for m in self.terms for l in leaves(m)}

    def degree(self) -> int:
        return max((degree(m) for m in self.terms), default=0)

    def is_multilinear(self) -> bool:
        if not self.terms:
            return True
        n = self.degree()
        return all(is_multilinear_monomial(m, n) for m in self.terms)

    def to_text(self, alphabet: Alphabet = Alphabet()) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda mc: monomial_text(mc[0], alphabet)):
            body = monomial_text(m, alphabet)
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            term = body if mag == 1 else f"{mag}*{body}"
            if not parts:
                parts.append(term if sign == "+" else f"-{term}")
            else:
                parts.append(f" {sign} {term}")
        return "".join(parts)


def commutator(p: HPolynomial, q: HPolynomial) -> HPolynomial:
    return p * q - q * p


# --- enumeration ---------------------------------------------------------------


def catalan(n: int) -> int:
    return factorial(2 * n) // (factorial(n + 1) * factorial(n))


@lru_cache(maxsize=None)
def shapes(n: int) -> tuple:
    """Bracketing shapes with ``n`` leaves; leaves are ``None`` placeholders."""
    if n == 1:
        return (None,)
    out = []
    for k in range(1, n):
        for left in shapes(k):
            for right in shapes(n - k):
                out.append((left, right))
    return tuple(out)


def left_normed_shape(n: int):
    shape = None
    for _ in range(n - 1):
        shape = (shape, None)
    return shape


def _fill(shape, labels: Iterator[Leaf]) -> Monomial:
    if shape is None:
        return next(labels)
    left = _fill(shape[0], labels)
    return Node(left, _fill(shape[1], labels))


def count_multilinear(n: int, d: int = 1, assoc: bool = False) -> int:
    return (1 if assoc else catalan(n - 1)) * factorial(n) * d**n


def enumerate_multilinear_monomials(
    n: int,
    decorations: Sequence[Decoration] | int = (None,),
    *,
    assoc: bool = False,
    cap: int | None = 1_000_000,
) -> list[Monomial]:
    """All multilinear monomials of degree ``n`` in the documented order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(decorations, int):
        decorations = [HBasis(j) for j in range(decorations)] if decorations > 1 else [None]
    decorations = list(decorations)
    total = count_multilinear(n, len(decorations), assoc)
    if cap is not None and total > cap:
        raise BudgetExceeded(f"{total} monomials exceeds the cap {cap}")
    shape_list = (left_normed_shape(n),) if assoc else shapes(n)
    out = []
    for shape in shape_list:
        for perm in itertools.permutations(range(1, n + 1)):
            for decs in itertools.product(decorations, repeat=n):
                out.append(_fill(shape, iter(Leaf(v, d) for v, d in zip(perm, decs))))
    return out


# --- evaluation ----------------------------------------------------------------


class Evaluator:
    """Homomorphic evaluation of monomials on basis substitutions.

    ``mode`` selects how a decorated leaf acts on the substituted basis vector:
    ``"haction"`` applies the representation matrix (grade decorations are
    resolved through the projection onto the component), ``"graded"`` keeps a
    basis vector only when its degree matches the grade label.
    """

    def __init__(self, A: Algebra, act: GeneralizedHAction | None = None,
                 grading: Grading | None = None, mode: str = "haction"):
        self.A = A
        self.act = act
        self.grading = grading
        self.mode = mode
        self._cache: dict = {}

    def leaf_image(self, dec: Decoration, vec: Mapping[int, Q]) -> dict:
        if dec is None:
            return dict(vec)
        if isinstance(dec, HBasis):
            if self.act is None or dec.index >= self.act.hdim:
                raise DecorationMismatch(f"decoration h{dec.index} has no matching H-action")
            return apply(self.act.rho[dec.index], vec)
        if self.grading is None or dec.index >= len(self.grading.labels):
            raise DecorationMismatch(f"grade decoration {dec.index} has no matching grading")
        deg = self.grading.degree
        return {b: x for b, x in vec.items() if deg[b] == dec.index}

    def _leaf_table(self, leaf: Leaf) -> dict:
        s = self.A.dim
        if self.mode == "graded" and isinstance(leaf.dec, Grade):
            if self.grading is None:
                raise DecorationMismatch("graded evaluation needs a grading")
            return {(b,): {b: ONE} for b in self.grading.component(leaf.dec.index)}
        out = {}
        for b in range(s):
            img = self.leaf_image(leaf.dec, {b: ONE})
            if img:
                out[(b,)] = img
        return out

    def table(self, m: Monomial) -> dict:
        """``{basis indices in leaf order: value}`` over all nonzero substitutions.

        The table does not depend on variable names, so it is cached on the
        monomial with all variables erased.
        """
        return self._skeleton_table(skeleton(m))

    def _skeleton_table(self, m: Monomial) -> dict:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        if isinstance(m, Leaf):
            out = self._leaf_table(m)
        else:
            lt, rt = self._skeleton_table(m.left), self._skeleton_table(m.right)
            mul = self.A.mul
            out = {}
            for bl, vl in lt.items():
                for br, vr in rt.items():
                    v = mul(vl, vr)
                    if v:
                        out[bl + br] = v
        self._cache[m] = out
        return out

    def by_variable(self, m: Monomial, n: int) -> dict:
        """Value table keyed by the tuple ``(b_1, ..., b_n)`` with ``x_i -> a_{b_i}``."""
        order = [l.var - 1 for l in leaves(m)]
        out = {}
        for key, v in self.table(m).items():
            b = [0] * n
            for pos, var in enumerate(order):
                b[var] = key[pos]
            out[tuple(b)] = v
        return out

    def evaluate(self, m: Monomial, assignment: Mapping[int, Mapping[int, Q]]) -> dict:
        if isinstance(m, Leaf):
            if m.var not in assignment:
                raise UnassignedVariable(f"x{m.var} is not assigned")
            return self.leaf_image(m.dec, assignment[m.var])
        return self.A.mul(self.evaluate(m.left, assignment), self.evaluate(m.right, assignment))


def _as_sparse(v) -> dict:
    if isinstance(v, Mapping):
        return {k: as_rational(x) for k, x in v.items() if x}
    return {k: as_rational(x) for k, x in enumerate(v) if x}


def substitute(
    f: HPolynomial,
    assignment: Mapping[int, object],
    A: Algebra,
    act: GeneralizedHAction | None = None,
    grading: Grading | None = None,
) -> list[Q]:
    """Evaluate ``f`` with ``x_i -> assignment[i]`` (dense or sparse coordinates)."""
    ev = Evaluator(A, act, grading)
    vals = {i: _as_sparse(v) for i, v in assignment.items()}
    out: dict = {}
    for m, c in f.terms.items():
        axpy(out, c, ev.evaluate(m, vals))
    return [out.get(k, Q(0)) for k in range(A.dim)]


def is_identity_multilinear(
    f: HPolynomial,
    A: Algebra,
    act: GeneralizedHAction | None = None,
    grading: Grading | None = None,
) -> bool:
    """Vanishing on every basis tuple; enough by multilinearity."""
    if not f.is_multilinear():
        raise NotMultilinear("polynomial is not multilinear in x1..xn")
    if not f.terms:
        return True
    n = f.degree()
    ev = Evaluator(A, act, grading)
    total: dict = {}
    for m, c in f.terms.items():
        for b, v in ev.by_variable(m, n).items():
            acc = total.setdefault(b, {})
            axpy(acc, c, v)
    return all(not v for v in total.values())
