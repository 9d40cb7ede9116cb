"""Exponent report (c_n^(1/n), d_n, colength, bounds) for one catalog algebra.

Usage: python3 scripts/exponent_trend.py fz2_z2 --max-n 5 --assoc
"""
import argparse
from dataclasses import dataclass

from hcodim.catalog import catalog_get, load_action, load_algebra, load_grading
from hcodim.exponent import exponent_report


@dataclass
class TrendConfig:
    name: str = "fz2_z2"
    max_n: int = 5
    assoc: bool = True
    fmt: str = "table"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("name", nargs="?", default=TrendConfig.name)
    ap.add_argument("--max-n", type=int, default=TrendConfig.max_n)
    ap.add_argument("--nonassoc", action="store_true", help="all bracketings instead of left-normed products")
    ap.add_argument("--format", choices=["table", "csv"], default=TrendConfig.fmt)
    args = ap.parse_args()
    cfg = TrendConfig(args.name, args.max_n, not args.nonassoc, args.format)
    doc = catalog_get(cfg.name)
    A = load_algebra(doc)
    rep = exponent_report(A, load_action(doc), cfg.max_n, grading=load_grading(doc), assoc=cfg.assoc)
    print(f"# {rep.name}: dim {rep.s}, simplicity {rep.simple}")
    print(rep.to_table() if cfg.fmt == "table" else rep.to_csv(), end="")


if __name__ == "__main__":
    main()
