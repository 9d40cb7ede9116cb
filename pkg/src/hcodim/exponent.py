"""The Φ function and per-degree exponent estimates.

Everything exact (codimensions, multiplicities, colengths, factorial bounds)
stays in integers; only Φ values and n-th roots are doubles, printed with 12
decimal digits (Python's round-half-even formatting).
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial, prod
from typing import Sequence

from .algebra import Algebra, GeneralizedHAction, Grading, grading_to_haction, is_h_simple
from .limits import DEFAULT_BUDGET, Budget
from .symfunc import cocharacter_report, colength_bound

DIGITS = 12


class BoundViolation(AssertionError):
    """A finite inequality that must hold for every algebra failed."""


def fmt(x: float) -> str:
    return f"{x:.{DIGITS}f}"


def phi(xs: Sequence) -> float:
    """``1 / prod x_i^x_i`` with ``0^0 = 1``; each ``x_i`` must lie in ``[0, 1]``."""
    total = []
    for x in xs:
        if not 0 <= x <= 1:
            raise ValueError(f"phi is defined on [0, 1]; got {x}")
        x = float(x)
        if x > 0:
            total.append(x * math.log(x))
    return math.exp(-math.fsum(total))


def pushing_boxes_monotonicity_check(xi: float, grid: int) -> bool:
    """Sample ``1 / (x^x (xi-x)^(xi-x))`` on ``grid`` interior points of ``(0, xi/2)``.

    Returns True when the samples are strictly increasing.  The comparison is
    done on the logarithm, which is monotone and avoids overflow.
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    if not 0 < xi <= 1:
        raise ValueError("xi must lie in (0, 1]")
    xi = float(xi)

    def log_f(x: float) -> float:
        return -(x * math.log(x) + (xi - x) * math.log(xi - x))

    values = [log_f(xi / 2 * k / (grid + 1)) for k in range(1, grid + 1)]
    return all(a < b for a, b in zip(values, values[1:]))


def max_multinomial(n: int, shapes: Sequence) -> int:
    """``max n! / (λ_1! ... λ_s!)`` over the given shapes (0 if there are none)."""
    return max((factorial(n) // prod(factorial(p) for p in lam) for lam in shapes), default=0)


@dataclass
class ExponentRow:
    n: int
    codim: int
    root: float  # c_n^(1/n)
    d_n: float
    argmax: tuple
    colength: int
    colength_bound: int
    multinomial_max: int

    @property
    def factorial_bound(self) -> int:
        return self.colength * self.multinomial_max

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "codim": self.codim,
            "codim_root": fmt(self.root),
            "d_n": fmt(self.d_n),
            "argmax": list(self.argmax),
            "colength": self.colength,
            "colength_bound": str(self.colength_bound),
            "factorial_bound": str(self.factorial_bound),
        }


@dataclass
class ExponentReport:
    name: str
    s: int
    simple: str  # simplicity verdict of the algebra with its action
    rows: list = field(default_factory=list)

    COLUMNS = ("n", "codim", "codim_root", "d_n", "argmax", "colength", "colength_bound", "factorial_bound")

    def to_json(self) -> dict:
        return {"algebra": self.name, "s": self.s, "simple": self.simple, "rows": [r.to_json() for r in self.rows]}

    def _cells(self, row: ExponentRow) -> list[str]:
        d = row.to_json()
        d["argmax"] = " ".join(map(str, row.argmax))
        return [str(d[c]) for c in self.COLUMNS]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.COLUMNS)
        for r in self.rows:
            w.writerow(self._cells(r))
        return buf.getvalue()

    def to_table(self) -> str:
        cells = [list(self.COLUMNS)] + [self._cells(r) for r in self.rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(self.COLUMNS))]
        return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells) + "\n"


def exponent_row(n: int, A: Algebra, act=None, grading=None, *, mode=None, assoc=False,
                 budget: Budget = DEFAULT_BUDGET) -> ExponentRow:
    rep = cocharacter_report(n, A, act, grading, mode=mode, assoc=assoc, budget=budget)
    support = [lam for lam, m, _ in rep.entries if m]
    d_n, argmax = 0.0, ()
    for lam in support:
        value = phi([p / n for p in lam])
        if value > d_n:
            d_n, argmax = value, lam
    row = ExponentRow(
        n=n, codim=rep.codimension, root=rep.codimension ** (1 / n), d_n=d_n, argmax=tuple(argmax),
        colength=rep.colength, colength_bound=colength_bound(A.dim, n),
        multinomial_max=max_multinomial(n, support),
    )
    if row.colength > row.colength_bound:
        raise BoundViolation(f"n={n}: colength {row.colength} exceeds {row.colength_bound}")
    if row.codim > row.factorial_bound:
        raise BoundViolation(f"n={n}: codimension {row.codim} exceeds colength * max multinomial {row.factorial_bound}")
    return row


def _row_job(args):
    n, A, act, grading, mode, assoc, budget = args
    return exponent_row(n, A, act, grading, mode=mode, assoc=assoc, budget=budget)


def exponent_report(
    A: Algebra,
    act: GeneralizedHAction | None = None,
    n_max: int | None = None,
    *,
    grading: Grading | None = None,
    mode: str | None = None,
    assoc: bool = False,
    budget: Budget = DEFAULT_BUDGET,
    jobs: int = 1,
    seed: int = 0,
) -> ExponentReport:
    """Rows for ``n = 1..n_max``; asserts the finite bounds and, for H-simple algebras, monotonicity."""
    decorated = act is not None or grading is not None
    if n_max is None:
        n_max = 4 if decorated else 5
    if act is None and grading is not None:
        verdict = is_h_simple(A, grading_to_haction(A, grading), seed=seed).verdict
    else:
        verdict = is_h_simple(A, act, seed=seed).verdict
    jobs_args = [(n, A, act, grading, mode, assoc, budget) for n in range(1, n_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_row_job, jobs_args))
    else:
        rows = [_row_job(a) for a in jobs_args]
    if verdict == "Simple":
        for a, b in zip(rows, rows[1:]):
            if a.codim > b.codim:
                raise BoundViolation(f"codimensions decrease from n={a.n} ({a.codim}) to n={b.n} ({b.codim})")
    return ExponentReport(A.name, A.dim, verdict, rows)
