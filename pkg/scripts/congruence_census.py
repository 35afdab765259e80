#!/usr/bin/env python3
"""Exhaustive census of det(circulant) mod n against the power-sum formula.

Prime sizes always agree; the table shows how often composite sizes fail.
"""

import argparse
import itertools

from periodic_surgery.circulant import CirculantMatrix, det_mod_n_formula
from periodic_surgery.linalg import determinant


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()

    print(f"{'n':>3} {'rows':>8} {'failures':>9}  first failing row")
    for n in range(2, args.max_n + 1):
        total = bad = 0
        first = None
        for row in itertools.product(range(n), repeat=n):
            total += 1
            if determinant(CirculantMatrix(row).expand()) % n != det_mod_n_formula(row, n):
                bad += 1
                first = first or row
        print(f"{n:>3} {total:>8} {bad:>9}  {first if first else '-'}")


if __name__ == "__main__":
    main()
