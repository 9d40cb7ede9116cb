"""Finite-dimensional algebras by structure constants, gradings and H-actions."""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .exactlin import Echelon, Matrix, SpanSolver, as_rational, axpy, nullspace, Q

ONE = Q(1)


class InconsistentGrading(ValueError):
    def __init__(self, pair, targets, message=None):
        self.pair = pair
        self.targets = targets
        super().__init__(message or f"grade pair {pair} lands in several components {targets}")


class InvalidAction(ValueError):
    """The data does not define a unital left H-module."""


class NotGeneralizedAction(InvalidAction):
    def __init__(self, h, residual, message=None):
        self.h = h
        self.residual = residual
        super().__init__(message or f"no (Delta, Theta) witness exists for H-basis element {h!r}")


def _check_square(mat, n, what):
    if len(mat) != n or any(len(r) != n for r in mat):
        raise ValueError(f"{what} must be {n}x{n}")


def _mat(rows) -> tuple:
    return tuple(tuple(as_rational(x) for x in r) for r in rows)


def identity(n: int) -> tuple:
    return tuple(tuple(ONE if i == j else Q(0) for j in range(n)) for i in range(n))


def matmul(a, b) -> tuple:
    bt = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(r, c)), Q(0)) for c in bt) for r in a)


def apply(mat, vec: Mapping[int, Q]) -> dict:
    """Dense matrix times sparse vector."""
    out: dict = {}
    for c, x in vec.items():
        for r in range(len(mat)):
            y = mat[r][c]
            if y:
                v = out.get(r, 0) + y * x
                if v:
                    out[r] = v
                else:
                    out.pop(r, None)
    return out


def column(mat, c: int) -> dict:
    return {r: mat[r][c] for r in range(len(mat)) if mat[r][c]}


@dataclass(frozen=True)
class Algebra:
    """``basis[i] * basis[j] = sum_k products[(i, j)][k] * basis[k]``."""

    name: str
    basis: tuple
    products: Mapping  # (i, j) -> {k: Q}, nonzero entries only

    def __post_init__(self):
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis labels must be distinct")
        s = len(self.basis)
        for (i, j), out in self.products.items():
            if not (0 <= i < s and 0 <= j < s) or any(not 0 <= k < s for k in out):
                raise IndexError(f"structure constant index out of range at ({i}, {j})")

    @classmethod
    def from_table(cls, name: str, basis: Sequence[str], table) -> "Algebra":
        """Build from sparse ``(i, j, k, coeff)`` quadruples."""
        prods: dict = {}
        for i, j, k, c in table:
            c = as_rational(c)
            if c:
                axpy(prods.setdefault((i, j), {}), ONE, {k: c})
        return cls(name, tuple(basis), {key: v for key, v in prods.items() if v})

    @property
    def dim(self) -> int:
        return len(self.basis)

    def structure_constant(self, i: int, j: int, k: int) -> Q:
        return self.products.get((i, j), {}).get(k, Q(0))

    def table(self) -> list[tuple[int, int, int, Q]]:
        return [(i, j, k, c) for (i, j) in sorted(self.products) for k, c in sorted(self.products[(i, j)].items())]

    def mul(self, u: Mapping[int, Q], v: Mapping[int, Q]) -> dict:
        """Product of sparse coordinate vectors."""
        out: dict = {}
        if not u or not v:
            return out
        prods = self.products
        for i, x in u.items():
            for j, y in v.items():
                p = prods.get((i, j))
                if p:
                    axpy(out, x * y, p)
        return out

    def multiply(self, u: Sequence, v: Sequence) -> list[Q]:
        """Product of dense coordinate vectors."""
        s = self.dim
        if len(u) != s or len(v) != s:
            raise ValueError(f"expected vectors of length {s}")
        su = {i: as_rational(x) for i, x in enumerate(u) if x}
        sv = {i: as_rational(x) for i, x in enumerate(v) if x}
        w = self.mul(su, sv)
        return [w.get(k, Q(0)) for k in range(s)]

    def left_mult(self, i: int) -> tuple:
        """Matrix of ``x -> a_i x``."""
        s = self.dim
        return tuple(
            tuple(self.structure_constant(i, c, r) for c in range(s)) for r in range(s)
        )

    def right_mult(self, i: int) -> tuple:
        s = self.dim
        return tuple(
            tuple(self.structure_constant(c, i, r) for c in range(s)) for r in range(s)
        )

    def is_associative(self) -> bool:
        s = self.dim
        e = [{i: ONE} for i in range(s)]
        for i in range(s):
            for j in range(s):
                ij = self.mul(e[i], e[j])
                for k in range(s):
                    if self.mul(ij, e[k]) != self.mul(e[i], self.mul(e[j], e[k])):
                        return False
        return True


@dataclass(frozen=True)
class Grading:
    """Grading with every basis vector homogeneous.

    ``star`` is the partial operation on labels, defined on pairs whose
    component product is nonzero.
    """

    labels: tuple
    degree: tuple  # label index per basis vector
    star: Mapping  # (s, t) -> r on label indices

    @property
    def support(self) -> tuple:
        return tuple(t for t in range(len(self.labels)) if t in set(self.degree))

    @property
    def pairs(self) -> tuple:
        """The domain of ``star`` (pairs of labels with nonzero product)."""
        return tuple(sorted(self.star))

    def component(self, t: int) -> tuple:
        return tuple(i for i, d in enumerate(self.degree) if d == t)

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown grade label {label!r}; known: {list(self.labels)}") from None


def validate_grading(A: Algebra, degree: Sequence[int], labels: Sequence[str] | None = None) -> Grading:
    """Check that basis-homogeneous degrees define a grading and derive ``star``."""
    if len(degree) != A.dim:
        raise ValueError(f"need one degree per basis vector ({A.dim}), got {len(degree)}")
    if labels is None:
        labels = [str(t) for t in range(max(degree) + 1)]
    labels = tuple(labels)
    if any(not 0 <= d < len(labels) for d in degree):
        raise ValueError("degree refers to an unknown label")
    star: dict = {}
    witness: dict = {}
    for (i, j), out in sorted(A.products.items()):
        pair = (degree[i], degree[j])
        for k in sorted(out):
            r = degree[k]
            if pair in star and star[pair] != r:
                s_lab, t_lab = labels[pair[0]], labels[pair[1]]
                raise InconsistentGrading(
                    (s_lab, t_lab),
                    (labels[star[pair]], labels[r]),
                    f"A^({s_lab})A^({t_lab}) meets both A^({labels[star[pair]]}) "
                    f"(via {A.basis[witness[pair][0]]}*{A.basis[witness[pair][1]]}) "
                    f"and A^({labels[r]}) (via {A.basis[i]}*{A.basis[j]})",
                )
            star[pair] = r
            witness.setdefault(pair, (i, j))
    return Grading(labels, tuple(degree), star)


@dataclass(frozen=True)
class GeneralizedHAction:
    """Left action of a unital associative algebra H on A.

    ``rho[h][r][c]`` is the coefficient of ``a_r`` in ``h . a_c``.  Witnesses,
    when present, map each H-basis index to ``(delta, theta)`` where both are
    ``{(u, v): coeff}`` over pairs of H-basis indices.  A witness is one
    solution among many; nothing canonical is implied.
    """

    hbasis: tuple
    htable: Mapping  # (i, j) -> {k: Q}
    unit: tuple
    rho: tuple
    witnesses: Mapping | None = None

    @property
    def hdim(self) -> int:
        return len(self.hbasis)

    def hmul(self, u: Mapping[int, Q], v: Mapping[int, Q]) -> dict:
        out: dict = {}
        for i, x in u.items():
            for j, y in v.items():
                p = self.htable.get((i, j))
                if p:
                    axpy(out, x * y, p)
        return out

    def act(self, h: int, vec: Mapping[int, Q]) -> dict:
        return apply(self.rho[h], vec)

    def rho_of(self, hvec: Mapping[int, Q]) -> tuple:
        """Representation matrix of an arbitrary element of H."""
        s = len(self.rho[0])
        out = [[Q(0)] * s for _ in range(s)]
        for h, x in hvec.items():
            for r in range(s):
                for c in range(s):
                    out[r][c] += x * self.rho[h][r][c]
        return tuple(tuple(r) for r in out)


def trivial_action(A: Algebra) -> GeneralizedHAction:
    """H = F acting by scalars."""
    return GeneralizedHAction(
        hbasis=("1",),
        htable={(0, 0): {0: ONE}},
        unit=(ONE,),
        rho=(identity(A.dim),),
        witnesses={0: ({(0, 0): ONE}, {})},
    )


def make_action(hbasis, htable, unit, rho, witnesses=None) -> GeneralizedHAction:
    """Normalise user data (quadruples, strings) into a GeneralizedHAction."""
    prods: dict = {}
    for i, j, k, c in htable:
        c = as_rational(c)
        if c:
            axpy(prods.setdefault((i, j), {}), ONE, {k: c})
    return GeneralizedHAction(
        hbasis=tuple(hbasis),
        htable={key: v for key, v in prods.items() if v},
        unit=tuple(as_rational(x) for x in unit),
        rho=tuple(_mat(m) for m in rho),
        witnesses=witnesses,
    )


def check_module_laws(A: Algebra, act: GeneralizedHAction) -> None:
    """Raise InvalidAction unless H is unital associative and rho a unital homomorphism."""
    m, s = act.hdim, A.dim
    if len(act.rho) != m:
        raise InvalidAction(f"need {m} representation matrices, got {len(act.rho)}")
    for mat in act.rho:
        _check_square(mat, s, "representation matrix")
    if len(act.unit) != m:
        raise InvalidAction("unit has wrong length")
    e = [{i: ONE} for i in range(m)]
    unit = {i: x for i, x in enumerate(act.unit) if x}
    for i in range(m):
        if act.hmul(unit, e[i]) != e[i] or act.hmul(e[i], unit) != e[i]:
            raise InvalidAction(f"unit does not act as identity on {act.hbasis[i]}")
        for j in range(m):
            ij = act.hmul(e[i], e[j])
            for k in range(m):
                if act.hmul(ij, e[k]) != act.hmul(e[i], act.hmul(e[j], e[k])):
                    raise InvalidAction(
                        f"H is not associative on ({act.hbasis[i]}, {act.hbasis[j]}, {act.hbasis[k]})"
                    )
    if act.rho_of(unit) != identity(s):
        raise InvalidAction("rho(1_H) is not the identity")
    for i in range(m):
        for j in range(m):
            if act.rho_of(act.hmul(e[i], e[j])) != matmul(act.rho[i], act.rho[j]):
                raise InvalidAction(
                    f"rho({act.hbasis[i]}*{act.hbasis[j]}) != rho({act.hbasis[i]}) rho({act.hbasis[j]})"
                )


def _twisted_columns(A: Algebra, act: GeneralizedHAction):
    """Vectors over (p, q, k) for each unknown of the Delta/Theta system."""
    s, m = A.dim, act.hdim
    images = [[act.act(u, {p: ONE}) for p in range(s)] for u in range(m)]
    cols = []
    keys = []
    for flip in (False, True):
        for u in range(m):
            for v in range(m):
                vec: dict = {}
                for p in range(s):
                    for q in range(s):
                        if flip:
                            prod = A.mul(images[u][q], images[v][p])
                        else:
                            prod = A.mul(images[u][p], images[v][q])
                        for k, x in prod.items():
                            vec[(p * s + q) * s + k] = x
                cols.append(vec)
                keys.append((flip, u, v))
    return cols, keys


def _target(A: Algebra, act: GeneralizedHAction, h: int) -> dict:
    s = A.dim
    vec: dict = {}
    for p in range(s):
        for q in range(s):
            out = act.act(h, A.mul({p: ONE}, {q: ONE}))
            for k, x in out.items():
                vec[(p * s + q) * s + k] = x
    return vec


def _witness_vector(cols, keys, delta, theta) -> dict:
    vec: dict = {}
    for col, (flip, u, v) in zip(cols, keys):
        coef = (theta if flip else delta).get((u, v), 0)
        if coef:
            axpy(vec, as_rational(coef), col)
    return vec


def validate_haction(A: Algebra, act: GeneralizedHAction) -> GeneralizedHAction:
    """Check the twisted product rule for every H-basis element.

    Supplied witnesses are verified; missing ones are solved for.  Returns the
    action with witnesses filled.
    """
    check_module_laws(A, act)
    cols, keys = _twisted_columns(A, act)
    given = act.witnesses or {}
    solver = None
    out = {}
    for h in range(act.hdim):
        target = _target(A, act, h)
        if h in given:
            delta, theta = given[h]
            lhs = _witness_vector(cols, keys, delta, theta)
            residual = dict(target)
            axpy(residual, -ONE, lhs)
            if residual:
                raise NotGeneralizedAction(act.hbasis[h], residual, f"supplied witness for {act.hbasis[h]!r} fails")
            out[h] = (dict(delta), dict(theta))
            continue
        if solver is None:
            solver = SpanSolver(cols)
        coeffs = solver.solve(target)
        if coeffs is None:
            residual, _ = solver._ech.reduce(target)
            raise NotGeneralizedAction(act.hbasis[h], residual)
        delta, theta = {}, {}
        for idx, x in sorted(coeffs.items()):
            flip, u, v = keys[idx]
            (theta if flip else delta)[(u, v)] = x
        out[h] = (delta, theta)
    return replace(act, witnesses=out)


def grading_to_haction(A: Algebra, g: Grading) -> GeneralizedHAction:
    """The action of functions on the support: ``h_t`` projects onto ``A^(t)``."""
    supp = g.support
    pos = {t: n for n, t in enumerate(supp)}
    m, s = len(supp), A.dim
    htable = {(n, n): {n: ONE} for n in range(m)}
    rho = tuple(
        tuple(tuple(ONE if r == c and g.degree[c] == t else Q(0) for c in range(s)) for r in range(s))
        for t in supp
    )
    witnesses = {}
    for r in supp:
        delta = {(pos[a], pos[b]): ONE for (a, b), rr in sorted(g.star.items()) if rr == r}
        witnesses[pos[r]] = (delta, {})
    act = GeneralizedHAction(
        hbasis=tuple(f"h_{g.labels[t]}" for t in supp),
        htable=htable,
        unit=tuple(ONE for _ in supp),
        rho=rho,
        witnesses=witnesses,
    )
    return validate_haction(A, act)


# --- H-simplicity -------------------------------------------------------------


@dataclass
class SimplicityVerdict:
    verdict: str  # "Simple" | "NotSimple" | "Unknown"
    envelope_dim: int | None = None
    envelope_basis: list = field(default_factory=list, repr=False)
    ideal: list = field(default_factory=list)  # sparse basis vectors of a proper invariant ideal
    reason: str = ""

    def to_dict(self, A: Algebra) -> dict:
        out = {"verdict": self.verdict, "reason": self.reason}
        if self.envelope_dim is not None:
            out["envelope_dim"] = self.envelope_dim
            out["dim_squared"] = A.dim**2
        if self.ideal:
            out["ideal_basis"] = [[str(v.get(k, 0)) for k in range(A.dim)] for v in self.ideal]
        return out


def _flatten(mat) -> dict:
    s = len(mat)
    return {r * s + c: mat[r][c] for r in range(s) for c in range(s) if mat[r][c]}


def _unflatten(vec: Mapping[int, Q], s: int) -> tuple:
    return tuple(tuple(vec.get(r * s + c, Q(0)) for c in range(s)) for r in range(s))


def envelope(A: Algebra, act: GeneralizedHAction | None = None) -> list[tuple]:
    """Basis of the algebra generated by id, left/right multiplications and rho."""
    s = A.dim
    gens = [A.left_mult(i) for i in range(s)] + [A.right_mult(i) for i in range(s)]
    if act is not None:
        gens += list(act.rho)
    ech = Echelon()
    basis: list[tuple] = []
    queue = [identity(s)] + gens
    while queue and len(basis) < s * s:
        mat = queue.pop(0)
        if ech.add(_flatten(mat)):
            basis.append(mat)
            queue.extend(matmul(g, mat) for g in gens)
    return basis


def spin(vec: Mapping[int, Q], mats: Sequence) -> list[dict]:
    """Basis of the span of ``M vec`` over ``mats`` (which should contain id)."""
    ech = Echelon()
    for m in mats:
        ech.add(apply(m, vec))
    return ech.basis_rows()


def is_invariant_ideal(A: Algebra, act: GeneralizedHAction | None, ideal: Sequence[Mapping]) -> bool:
    """Check closure of ``span(ideal)`` under left/right multiplication and rho."""
    solver = SpanSolver(list(ideal))
    s = A.dim
    images = []
    for b in ideal:
        for i in range(s):
            images.append(A.mul({i: ONE}, b))
            images.append(A.mul(b, {i: ONE}))
        if act is not None:
            images.extend(act.act(h, b) for h in range(act.hdim))
    return all(not img or solver.solve(img) is not None for img in images)


def _proper(sub: list, s: int) -> bool:
    return 0 < len(sub) < s


def is_h_simple(
    A: Algebra,
    act: GeneralizedHAction | None = None,
    *,
    seed: int = 0,
    budget: int = 200,
) -> SimplicityVerdict:
    """Decide H-simplicity by the enveloping algebra and a submodule search."""
    s = A.dim
    square = Echelon()
    for i in range(s):
        for j in range(s):
            square.add(A.mul({i: ONE}, {j: ONE}))
    if square.rank == 0:
        return SimplicityVerdict("NotSimple", reason="A^2=0")
    if square.rank < s:
        return SimplicityVerdict("NotSimple", ideal=square.basis_rows(), reason="A^2 is a proper ideal")

    basis = envelope(A, act)
    if len(basis) == s * s:
        return SimplicityVerdict(
            "Simple", envelope_dim=len(basis), envelope_basis=basis,
            reason="enveloping algebra is End(A); only 0 and A are invariant",
        )

    rng = random.Random(seed)
    transposed = [tuple(zip(*m)) for m in basis]

    def deterministic():
        for i in range(s):
            yield {i: ONE}
        for m in basis:
            yield from nullspace(Matrix.from_dense(m))

    def randomised():
        while True:
            combo = [rng.randint(-3, 3) for _ in basis]
            mat = [[sum(c * m[r][col] for c, m in zip(combo, basis)) for col in range(s)] for r in range(s)]
            yield from nullspace(Matrix.from_dense(mat))
            yield {i: Q(rng.randint(-3, 3)) for i in range(s)}

    def probe(v):
        sub = spin(v, basis)
        if _proper(sub, s):
            return sub, "proper submodule found"
        # an invariant subspace of the dual module gives its annihilator
        dual = spin(v, transposed)
        if _proper(dual, s):
            return nullspace(Matrix.from_rows(dual, s)), "annihilator of a dual submodule"
        return None

    tried = 0
    best = None
    for v in deterministic():
        tried += 1
        found = probe(v)
        if found and (best is None or len(found[0]) < len(best[0])):
            best = found
    if best is None:
        for v in randomised():
            v = {k: x for k, x in v.items() if x}
            if not v:
                continue
            tried += 1
            if tried > budget:
                break
            best = probe(v)
            if best:
                break
    if best is not None:
        return SimplicityVerdict("NotSimple", envelope_dim=len(basis), ideal=best[0], reason=best[1])
    return SimplicityVerdict(
        "Unknown", envelope_dim=len(basis), envelope_basis=basis,
        reason=f"no proper submodule among {budget} candidates",
    )
