#!/usr/bin/env python3
"""Run every verification sweep at its default size and print a timing table.

    python3 scripts/run_sweeps.py [--seed N] [--json results.json] [--with-p11]
"""

import argparse
import json
import time

from periodic_surgery.sweeps import DEFAULT_SEED, SUITES


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--json", help="write the full results here")
    ap.add_argument("--with-p11", action="store_true", help="extend the nullity census to p = 11")
    args = ap.parse_args()

    results = {}
    for name, fn in SUITES.items():
        kw = {}
        if "seed" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
            kw["seed"] = args.seed
        if name == "lemma2.7" and args.with_p11:
            kw["bound"] = 11
        t0 = time.perf_counter()
        res = fn(**kw)
        dt = time.perf_counter() - t0
        results[name] = res.to_dict() | {"seconds": round(dt, 3)}
        status = "ok" if res.ok else f"{res.violations} violations"
        print(f"{name:14s} {res.checked:>9d} checked  {dt:7.2f}s  {status}")
        for line in res.summary:
            print(f"{'':16s}{line}")

    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
