"""Cocharacter of the 2x2 matrix algebra in degree n (associative monomials).

Also computes the multiplicities of the given over-tall shapes, which must
vanish.  Degree 6 takes under a minute.

Usage: python3 scripts/m2_cocharacter.py [--n 6] [--format table|csv|json]
"""
import argparse
import json
import time
from dataclasses import dataclass

from hcodim.catalog import catalog_get, load_algebra
from hcodim.symfunc import cocharacter_report, partitions


@dataclass
class CocharacterConfig:
    n: int = 6
    fmt: str = "table"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=CocharacterConfig.n)
    ap.add_argument("--format", choices=["table", "csv", "json"], default=CocharacterConfig.fmt)
    args = ap.parse_args()
    cfg = CocharacterConfig(args.n, args.format)
    A = load_algebra(catalog_get("m2"))
    tall = [lam for lam in partitions(cfg.n) if len(lam) > A.dim]
    t = time.time()
    rep = cocharacter_report(cfg.n, A, assoc=True, overtall=tall)
    if cfg.fmt == "json":
        print(json.dumps(rep.to_json(), indent=1))
    elif cfg.fmt == "csv":
        print(rep.to_csv(), end="")
    else:
        print(f"c_{cfg.n} = {rep.codimension}, colength {rep.colength}, method {rep.method}")
        for lam, m, d in rep.entries:
            if m:
                print(f"  {' '.join(map(str, lam)):<14} m = {m:<3} dim = {d}")
        for lam, m in rep.overtall.items():
            print(f"  over-tall {' '.join(map(str, lam)):<10} m = {m}")
    print(f"# {time.time() - t:.1f} s")


if __name__ == "__main__":
    main()
