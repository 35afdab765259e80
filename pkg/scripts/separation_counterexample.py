#!/usr/bin/env python3
"""Find seam tangles whose quotient link is algebraically split while the
lifted linking matrix still has nonzero off-diagonal blocks.

Prints the first hit with its quotient and lifted linking matrices, and the
row sums of each off-diagonal block (these always reproduce the quotient
linking number, so a zero quotient entry only forces zero row sums).
"""

import argparse
import json

from periodic_surgery.diagram import (
    block_structure,
    is_orbitally_separated,
    is_strongly_periodic,
    lift,
    linking_matrix,
    quotient_linking_matrix,
    sample_tangle,
)
from periodic_surgery.sweeps import DEFAULT_SEED


def show(rows, indent="  "):
    w = max((len(str(x)) for r in rows for x in r), default=1)
    for r in rows:
        print(indent + " ".join(str(x).rjust(w) for x in r))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--samples", type=int, default=5000)
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5])
    ap.add_argument("--all", action="store_true", help="count every hit instead of stopping at the first")
    args = ap.parse_args()

    hits = 0
    tried = 0
    for seed in range(args.seed, args.seed + args.samples):
        t = sample_tangle(seed)
        for p in args.primes:
            if not is_strongly_periodic(t, p):
                continue
            tried += 1
            d = lift(t, p)
            br = block_structure(d, linking_matrix(d))
            if is_orbitally_separated(t, p) and not br.off_diagonal_zero:
                hits += 1
                if hits == 1:
                    a = linking_matrix(d)
                    print(f"seed {seed}, p = {p}")
                    print("tangle:", json.dumps(t.to_dict()))
                    print("quotient linking matrix:")
                    show(quotient_linking_matrix(t).to_rows())
                    print("lifted linking matrix, components " + " ".join(d.labels) + ":")
                    show(a.to_rows())
                    k = len(d.orbit_sizes())
                    for i in range(k):
                        for j in range(i + 1, k):
                            blk = a.submatrix(range(i * p, (i + 1) * p), range(j * p, (j + 1) * p))
                            sums = [sum(r) for r in blk.to_rows()]
                            print(f"block ({i + 1},{j + 1}) row sums: {sums}")
                if not args.all:
                    return
    print(f"{hits} hits among {tried} strongly periodic lifts")


if __name__ == "__main__":
    main()
