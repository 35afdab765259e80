#!/usr/bin/env python3
"""Groups presented by [[a, b], [b, a]] over a grid, tallied by parity case
and by whether an odd number of Z/2 or Z/4 summands ever shows up."""

import argparse
from collections import Counter

from periodic_surgery.homology import involution_parity_holds, symmetric_pair_case, two_by_two_group


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=25)
    args = ap.parse_args()

    cases, groups, odd = Counter(), Counter(), []
    r = range(-args.bound, args.bound + 1)
    for a in r:
        for b in r:
            if a * a == b * b:
                continue
            g = two_by_two_group(a, b)
            cases[symmetric_pair_case(a, b)] += 1
            groups[g.primary_str()] += 1
            if not involution_parity_holds(g):
                odd.append((a, b, str(g)))

    for case, n in sorted(cases.items()):
        print(f"{case:26s} {n}")
    print("most common groups:")
    for g, n in groups.most_common(10):
        print(f"  {g:24s} {n}")
    print(f"grid points with odd Z/2 or Z/4 count and no order-16 element: {len(odd)}")
    for item in odd[:5]:
        print("  ", item)


if __name__ == "__main__":
    main()
