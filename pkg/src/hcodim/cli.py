"""Command-line interface: ``hcodim <command> [options]``.

Machine output (JSON, CSV or a plain table) goes to stdout, diagnostics to
stderr.  Exit codes: 0 success, 1 validation or property failure, 2 usage
error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict

from . import __version__
from .algebra import (
    InconsistentGrading, InvalidAction, check_module_laws, grading_to_haction, is_h_simple, validate_haction,
)
from .catalog import (
    FORMAT, DocumentError, action_to_json, algebra_to_json, catalog_entry, catalog_get, catalog_names,
    document_hash, load_action, load_algebra, load_grading,
)
from .codim import NotAssociative, codimension, evaluation_matrix, graded_codimension, write_triplets
from .exactlin import rank as exact_rank
from .exponent import exponent_report
from .freealg import Alphabet, is_identity_multilinear
from .generic import is_identity_generic
from .limits import Budget, BudgetExceeded, CrossCheckMismatch
from .parsing import ParseError, parse_polynomial
from .symfunc import cocharacter_report

EPILOG = """\
Indexing: algebra documents use 0-based basis indices (table entries
[i, j, k, "p/q"] mean a_i * a_j has coefficient p/q on a_k); polynomials use
1-based variables x1, x2, ...  Decorations: x1^h0 is the H-basis element with
index 0, x1^(label) names a grade label (or an H-basis label).
Exit codes: 0 ok, 1 validation/property failure, 2 usage error, 3 budget exceeded.
"""


class UsageError(Exception):
    pass


class ValidationFailure(Exception):
    pass


# --- loading ---------------------------------------------------------------------


class Context:
    """The algebra named on the command line, with its optional grading and action."""

    def __init__(self, args):
        if args.algebra and args.catalog:
            raise UsageError("give either --algebra or --catalog, not both")
        if args.catalog:
            try:
                self.doc = catalog_get(args.catalog)
            except KeyError as exc:
                raise UsageError(exc.args[0]) from None
        elif args.algebra:
            try:
                with open(args.algebra) as fh:
                    self.doc = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot read {args.algebra}: {exc}") from None
        else:
            raise UsageError("an algebra is required: --algebra PATH or --catalog NAME")
        self.A = load_algebra(self.doc)
        self.grading = load_grading(self.doc, self.A)
        self.act = load_action(self.doc)
        if self.act is not None:
            check_module_laws(self.A, self.act)
        self.args = args
        self.budget = Budget(override=args.budget_override)

    def mode(self) -> str:
        mode = self.args.mode
        if mode is None:
            mode = "haction" if self.act is not None else ("graded" if self.grading is not None else "ordinary")
        if mode == "haction" and self.act is None:
            raise UsageError(f"{self.A.name} has no H-action; use --mode ordinary or graded")
        if mode == "graded" and self.grading is None:
            raise UsageError(f"{self.A.name} has no grading")
        return mode

    def alphabet(self, mode: str) -> Alphabet:
        if mode == "haction":
            return Alphabet.for_action(self.act)
        if mode == "graded":
            return Alphabet.for_grading(self.grading)
        return Alphabet()

    def operands(self, mode: str):
        """(act, grading) as consumed by the computational modules for ``mode``."""
        if mode == "haction":
            return self.act, None
        if mode == "graded":
            return None, self.grading
        return None, None

    def provenance(self) -> dict:
        return {
            "algebra": self.A.name,
            "hash": document_hash(self.doc),
            "seed": self.args.seed,
            "budget": asdict(self.budget),
            "certify": self.args.certify,
            "version": __version__,
        }


# --- emission --------------------------------------------------------------------


def emit(result: dict, ctx: Context | None, fmt: str, out) -> None:
    """Write a flat result in the requested format."""
    if fmt == "json":
        doc = dict(result)
        doc["format"] = FORMAT
        if ctx is not None:
            doc["provenance"] = ctx.provenance()
        out.write(json.dumps(doc, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(result))
        w.writerow([_cell(v) for v in result.values()])
        out.write(buf.getvalue())
    else:
        for k, v in result.items():
            out.write(f"{k}: {_cell(v)}\n")


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def emit_report(report, ctx: Context, fmt: str, out) -> None:
    """Reports with their own row structure (cocharacters, exponents)."""
    if fmt == "json":
        doc = report.to_json()
        doc["format"] = FORMAT
        doc["provenance"] = ctx.provenance()
        out.write(json.dumps(doc, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        out.write(report.to_csv())
    else:
        out.write(report.to_table())


# --- commands --------------------------------------------------------------------


def cmd_validate(args, out) -> int:
    ctx = Context(args)
    result = {"algebra": ctx.A.name, "dim": ctx.A.dim, "associative": ctx.A.is_associative()}
    if ctx.grading is not None:
        result["grading"] = "ok"
        result["support"] = [ctx.grading.labels[t] for t in ctx.grading.support]
    if ctx.act is not None:
        validate_haction(ctx.A, ctx.act)
        result["haction"] = "ok"
    emit(result, ctx, args.format or "json", out)
    return 0


def cmd_simple(args, out) -> int:
    ctx = Context(args)
    act = ctx.act
    if act is None and ctx.grading is not None:
        act = grading_to_haction(ctx.A, ctx.grading)
    verdict = is_h_simple(ctx.A, act, seed=args.seed)
    emit(verdict.to_dict(ctx.A), ctx, args.format or "json", out)
    return 0


def cmd_derive_coproducts(args, out) -> int:
    ctx = Context(args)
    act = ctx.act
    if act is None and ctx.grading is not None:
        act = grading_to_haction(ctx.A, ctx.grading)
    if act is None:
        raise UsageError(f"{ctx.A.name} has neither an H-action nor a grading")
    act = validate_haction(ctx.A, act)
    witnesses = {}
    for h in range(act.hdim):
        delta, theta = act.witnesses[h]
        witnesses[act.hbasis[h]] = {
            "delta": [[u, v, str(c)] for (u, v), c in sorted(delta.items())],
            "theta": [[u, v, str(c)] for (u, v), c in sorted(theta.items())],
        }
    emit({"algebra": ctx.A.name, "witnesses": witnesses}, ctx, args.format or "json", out)
    return 0


def cmd_check(args, out) -> int:
    ctx = Context(args)
    mode = ctx.mode()
    try:
        f = parse_polynomial(args.polynomial, ctx.alphabet(mode))
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    act, grading = ctx.operands(mode)
    if f.is_multilinear():
        holds = is_identity_multilinear(f, ctx.A, act, grading)
        path = "multilinear"
    else:
        holds = is_identity_generic(f, ctx.A, act, grading)
        path = "generic"
    emit({"identity": holds, "path": path}, ctx, args.format or "table", out)
    return 0


def _need_n(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    return args.n


def cmd_codim(args, out) -> int:
    ctx = Context(args)
    n = _need_n(args)
    mode = ctx.mode()
    act, grading = ctx.operands(mode)
    E = evaluation_matrix(n, ctx.A, act, grading, mode=mode, assoc=args.assoc, budget=ctx.budget)
    if args.dump_matrix:
        write_triplets(E, args.dump_matrix)
    # --certify forces pure exact elimination; otherwise a modular pre-pass picks
    # the pivot rows and an exact pass confirms the rank.  Same value either way.
    c = exact_rank(E.matrix, modular=not args.certify)
    emit({"n": n, "codim": c}, ctx, args.format or "json", out)
    return 0


def cmd_graded_codim(args, out) -> int:
    ctx = Context(args)
    n = _need_n(args)
    if ctx.grading is None:
        raise UsageError(f"{ctx.A.name} has no grading")
    c = graded_codimension(n, ctx.A, ctx.grading, assoc=args.assoc, budget=ctx.budget)
    emit({"n": n, "codim": c, "crosscheck": "ok"}, ctx, args.format or "json", out)
    return 0


def cmd_cocharacter(args, out) -> int:
    ctx = Context(args)
    n = _need_n(args)
    mode = ctx.mode()
    act, grading = ctx.operands(mode)
    rep = cocharacter_report(n, ctx.A, act, grading, mode=mode, assoc=args.assoc, budget=ctx.budget)
    emit_report(rep, ctx, args.format or "json", out)
    return 0


def cmd_exponent(args, out) -> int:
    ctx = Context(args)
    mode = ctx.mode()
    act, grading = ctx.operands(mode)
    rep = exponent_report(
        ctx.A, act, args.max_n, grading=grading, mode=mode, assoc=args.assoc, budget=ctx.budget,
        jobs=args.jobs, seed=args.seed,
    )
    emit_report(rep, ctx, args.format or "json", out)
    return 0


def cmd_catalog(args, out) -> int:
    if args.action == "list":
        for name in catalog_names():
            out.write(f"{name}\t{catalog_entry(name).provenance}\n")
        return 0
    if not args.name:
        raise UsageError("catalog show needs an entry name")
    try:
        doc = catalog_get(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    out.write(json.dumps(doc, indent=2) + "\n")
    return 0


def cmd_grade2h(args, out) -> int:
    ctx = Context(args)
    if ctx.grading is None:
        raise UsageError(f"{ctx.A.name} has no grading")
    act = grading_to_haction(ctx.A, ctx.grading)
    doc = algebra_to_json(ctx.A, ctx.grading)
    doc["haction"] = action_to_json(act)
    out.write(json.dumps(doc, indent=2) + "\n")
    return 0


COMMANDS = {
    "validate": (cmd_validate, "check the grading and H-action of an algebra"),
    "simple": (cmd_simple, "decide H-simplicity"),
    "derive-coproducts": (cmd_derive_coproducts, "solve for twisted-distributivity witnesses"),
    "check": (cmd_check, "test whether a polynomial is an identity"),
    "codim": (cmd_codim, "codimension c_n"),
    "graded-codim": (cmd_graded_codim, "graded codimension, cross-checked through the induced action"),
    "cocharacter": (cmd_cocharacter, "cocharacter multiplicities"),
    "exponent": (cmd_exponent, "per-n exponent estimates"),
    "catalog": (cmd_catalog, "list or show built-in algebras"),
    "grade2h": (cmd_grade2h, "convert a grading into the equivalent H-action"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", metavar="PATH", help="algebra document (JSON)")
    common.add_argument("--catalog", metavar="NAME", help="built-in algebra")
    common.add_argument("--n", type=int, help="degree")
    common.add_argument("--max-n", type=int, help="largest degree for exponent reports")
    common.add_argument("--mode", choices=["ordinary", "haction", "graded"])
    common.add_argument("--assoc", action="store_true", help="associative monomials only (left-normed)")
    common.add_argument("--format", choices=["json", "csv", "table"])
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--certify", action="store_true", help="exact elimination only, no modular pre-pass")
    common.add_argument("--budget-override", action="store_true", help="lift the degree and size caps")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for per-n rows")
    common.add_argument("--dump-matrix", metavar="PATH", help="write the evaluation matrix as sparse triplets")

    parser = argparse.ArgumentParser(
        prog="hcodim", description="Polynomial identities of finite-dimensional algebras with H-actions.",
        epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, epilog=EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        if name == "check":
            p.add_argument("polynomial", help='e.g. "[x1^(0), x2^(0)]" or "(x1*x2)*x3 - x1*(x2*x3)"')
        if name == "catalog":
            p.add_argument("action", choices=["list", "show"])
            p.add_argument("name", nargs="?")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    handler = COMMANDS[args.command][0]
    try:
        return handler(args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except BudgetExceeded as exc:
        err.write(f"budget exceeded: {exc}\n")
        return 3
    except (DocumentError, InconsistentGrading, InvalidAction, NotAssociative, CrossCheckMismatch,
            ValidationFailure) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
