"""Print codimension sequences for the catalog algebras.

Usage: python3 scripts/codim_tables.py [--max-n 5] [--names ut2 m2 ...]
"""
import argparse
import time
from dataclasses import dataclass, field

from hcodim.catalog import catalog_get, catalog_names, load_action, load_algebra, load_grading
from hcodim.codim import codimension
from hcodim.limits import BudgetExceeded


@dataclass
class TableConfig:
    max_n: int = 5
    names: list = field(default_factory=catalog_names)
    assoc: bool = False


def sequence(name: str, cfg: TableConfig) -> list:
    doc = catalog_get(name)
    A, act, grading = load_algebra(doc), load_action(doc), load_grading(doc)
    out = []
    for n in range(1, cfg.max_n + 1):
        try:
            out.append(codimension(n, A, act, grading, assoc=cfg.assoc, modular=True))
        except BudgetExceeded:
            out.append(None)
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=TableConfig.max_n)
    ap.add_argument("--names", nargs="*", default=None)
    ap.add_argument("--assoc", action="store_true", help="associative (left-normed) monomials only")
    args = ap.parse_args()
    cfg = TableConfig(max_n=args.max_n, assoc=args.assoc)
    if args.names:
        cfg.names = args.names
    print(f"{'algebra':<14} " + " ".join(f"{'n=' + str(n):>7}" for n in range(1, cfg.max_n + 1)) + "   seconds")
    for name in cfg.names:
        t = time.time()
        values = sequence(name, cfg)
        cells = " ".join(f"{'-' if v is None else v:>7}" for v in values)
        print(f"{name:<14} {cells}   {time.time() - t:7.2f}")


if __name__ == "__main__":
    main()
