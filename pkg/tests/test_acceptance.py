"""Acceptance criteria, one test each, at the stated bounds and time limits.

Every test prints a single ``[NN] PASS|FAIL ...`` line.  Run with
``pytest -s tests/test_acceptance.py`` to see them inline; they are also
collected into the terminal summary.
"""

import json
import time
from contextlib import contextmanager
from pathlib import Path

from periodic_surgery.circulant import verify_nullity_lemma
from periodic_surgery.homology import Verdict, first_homology, involution_obstruction
from periodic_surgery.linalg import IntMatrix, nullity_mod_p
from periodic_surgery.cli import main
from periodic_surgery.sweeps import (
    circulant_det_congruence_sweep,
    component_count_sweep,
    lifted_block_sweep,
    mod_p_rank_bridge_sweep,
    separated_nullity_sweep,
    symmetric_circulant_nullity_sweep,
    two_by_two_sweep,
)

from conftest import ACCEPTANCE_LINES

DATA = Path(__file__).resolve().parent.parent / "data"


class Clock:
    elapsed = 0.0


@contextmanager
def timed():
    c = Clock()
    t0 = time.perf_counter()
    yield c
    c.elapsed = time.perf_counter() - t0


def record(num, ok, text):
    line = f"[{num:02d}] {'PASS' if ok else 'FAIL'} {text}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_01_circulant_determinant_congruence():
    with timed() as c:
        res = circulant_det_congruence_sweep(max_n=5, random_rows=1000, max_random_n=8)
    by_n = res.details["violations_by_n"]
    record(
        1, res.ok and c.elapsed < 10,
        f"det congruence: {res.checked} circulants, {res.violations} violations by n {by_n}, "
        f"first {json.dumps(res.counterexample)}, {c.elapsed:.2f}s < 10s",
    )


def test_02_symmetric_circulant_nullity_never_one():
    with timed() as small:
        res = symmetric_circulant_nullity_sweep(bound=7)
    with timed() as big:
        rep11 = verify_nullity_lemma(11, bound=11)
    total = small.elapsed + big.elapsed
    counts = [res.details[str(p)]["total"] for p in (3, 5, 7)]
    ok = (
        res.ok and counts == [9, 125, 2401] and small.elapsed < 5
        and rep11.total == 11 ** 6 and not rep11.violation and total < 60
    )
    record(
        2, ok,
        f"symmetric circulant nullity != 1: p=3,5,7 counts {counts} in {small.elapsed:.2f}s < 5s; "
        f"p=11 {rep11.total} matrices, nullity-1 count {rep11.nullity_histogram.get(1, 0)}, total {total:.2f}s < 60s",
    )


def test_03_p_two_counterexample():
    direct = nullity_mod_p(IntMatrix.from_rows([[1, 1], [1, 1]]), 2)
    rep = verify_nullity_lemma(2, allow_two=True)
    witness = rep.witness.expand().to_rows() if rep.witness else None
    ok = direct == 1 and rep.violation and witness == [[1, 1], [1, 1]]
    record(3, ok, f"p=2: nullity_mod_2([[1,1],[1,1]]) = {direct}; demonstration witness {witness}")


def test_04_homology_fixtures():
    cases = {
        "[[1,-1],[-1,1]]": ([[1, -1], [-1, 1]], "Z"),
        "[[-1,-1],[-1,-1]]": ([[-1, -1], [-1, -1]], "Z"),
        "[[3,1],[1,3]]": ([[3, 1], [1, 3]], "Z/8"),
    }
    got = {k: str(first_homology(IntMatrix.from_rows(rows))) for k, (rows, _) in cases.items()}
    got["[]"] = str(first_homology(IntMatrix.zeros(0)))
    want = {k: v for k, (_, v) in cases.items()} | {"[]": "0"}
    record(4, got == want, "homology fixtures: " + ", ".join(f"{k} -> {v}" for k, v in got.items()))


def test_05_two_by_two_classification():
    with timed() as c:
        res = two_by_two_sweep(bound=25)
    ok = res.ok and res.checked == 51 * 51 and c.elapsed < 5
    record(5, ok, f"2x2 classification: {res.checked} grid points, {res.violations} violations, {c.elapsed:.2f}s < 5s")


def test_06_lifted_block_structure():
    with timed() as c:
        res = lifted_block_sweep(samples=500, primes=(2, 3, 5))
    kinds = res.details["violation_kinds"]
    detail = ""
    if res.counterexample:
        v = res.counterexample
        detail = (
            f"; first: seed {v['seed']}, p={v['p']}, quotient split={v['quotient_split']}, "
            f"off-diagonal zero={v['blocks']['off_diagonal_zero']}"
        )
    record(
        6, res.ok and c.elapsed < 30,
        f"lifted blocks: {res.checked} lifts, {res.violations} violations "
        f"(block structure {kinds['structure']}, separation equivalence {kinds['separation']}){detail}, {c.elapsed:.2f}s < 30s",
    )


def test_07_winding_matches_component_count():
    res = component_count_sweep(samples=500, primes=(2, 3, 5))
    record(7, res.ok, f"winding vs component count: {res.checked} pairs, {res.violations} disagreements")


def test_08_separated_nullity():
    with timed() as c:
        res = separated_nullity_sweep(samples=1000, primes=(3, 5, 7))
    ok = res.ok and res.checked == 3000 and c.elapsed < 30
    record(8, ok, f"separated nullity: {res.checked} assemblies, {res.violations} violations, {c.elapsed:.2f}s < 30s")


def test_09_nullity_bridge():
    res = mod_p_rank_bridge_sweep(samples=200, primes=(2, 3, 5, 7))
    record(9, res.ok and res.checked == 800, f"nullity bridge: {res.checked} checks, {res.violations} mismatches")


def test_10_check_periodic_end_to_end(capsys):
    code_lens = main(["check-periodic", str(DATA / "lens_3_1.json"), "--prime", "3"])
    out_lens = capsys.readouterr().out
    code_83 = main(["check-periodic", str(DATA / "lens_8_3.json"), "--prime", "2"])
    capsys.readouterr()
    code_z6 = main(["check-periodic", str(DATA / "z2_z3.json"), "--prime", "2", "--format", "json"])
    rules = {v["rule"]: v["verdict"] for v in json.loads(capsys.readouterr().out)}
    z6_direct = involution_obstruction(IntMatrix.diag([2, 3])).verdict is Verdict.NOT_PERIODIC
    ok = (
        code_lens == 1 and "mod-3 rank = 1" in out_lens
        and code_83 == 0
        and code_z6 == 1 and rules.get("Theorem 2.2") == "NotPeriodic" and z6_direct
    )
    with capsys.disabled():
        record(10, ok, f"check-periodic exits: [[3]] p=3 -> {code_lens}, [[3,1],[1,3]] p=2 -> {code_83}, "
                       f"Z/2+Z/3 p=2 -> {code_z6} ({rules.get('Theorem 2.2')})")
