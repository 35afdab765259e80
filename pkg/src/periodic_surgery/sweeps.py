"""Exhaustive and seeded-random verification sweeps.

Each sweep returns a :class:`SweepResult`; the CLI ``verify`` command, the
acceptance tests and ``scripts/`` all go through these.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .circulant import (
    CirculantMatrix,
    SymmetricCirculantMatrix,
    assemble_block_circulant,
    det_mod_n_formula,
    verify_nullity_lemma,
)
from .diagram import block_structure, is_orbitally_separated, is_strongly_periodic, lift, linking_matrix, sample_tangle
from .homology import (
    first_homology,
    involution_parity_holds,
    separated_nullity_check,
    symmetric_pair_case,
    two_by_two_group,
)
from .linalg import IntMatrix, determinant, nullity_mod_p

DEFAULT_SEED = 20000


@dataclass
class SweepResult:
    suite: str
    checked: int = 0
    violations: int = 0
    counterexample: Optional[dict] = None
    summary: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def fail(self, example: dict) -> None:
        self.violations += 1
        if self.counterexample is None:
            self.counterexample = example

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checked": self.checked,
            "violations": self.violations,
            "ok": self.ok,
            "counterexample": self.counterexample,
            "summary": self.summary,
            "details": self.details,
        }


def circulant_det_congruence_sweep(
    max_n: int = 5, random_rows: int = 1000, max_random_n: int = 8, seed: int = DEFAULT_SEED
) -> SweepResult:
    """det(circulant) mod n against the power-sum formula."""
    res = SweepResult("lemma2.6")
    per_n = {}
    bad_n = Counter()
    for n in range(2, max_n + 1):
        for row in itertools.product(range(n), repeat=n):
            res.checked += 1
            d = determinant(CirculantMatrix(row).expand()) % n
            if d != det_mod_n_formula(row, n):
                bad_n[n] += 1
                res.fail({"first_row": list(row), "n": n, "det_mod_n": d})
        per_n[n] = n ** n
    rng = random.Random(seed)
    for _ in range(random_rows):
        n = rng.randint(1, max_random_n)
        row = [rng.randint(-50, 50) for _ in range(n)]
        res.checked += 1
        d = determinant(CirculantMatrix(row).expand()) % n
        if d != det_mod_n_formula(row, n):
            bad_n[n] += 1
            res.fail({"first_row": row, "n": n, "det_mod_n": d})
    res.details = {
        "exhaustive": {str(k): v for k, v in per_n.items()},
        "random": random_rows,
        "violations_by_n": {str(k): bad_n[k] for k in sorted(bad_n)},
    }
    res.summary.append(
        f"{res.checked} circulants checked (exhaustive n <= {max_n}, {random_rows} random rows)"
    )
    res.summary.append("all congruences hold" if res.ok else f"{res.violations} congruence failures")
    return res


def symmetric_circulant_nullity_sweep(bound: int = 7, include_two: bool = False) -> SweepResult:
    """No symmetric p x p circulant over F_p has nullity exactly 1, p odd."""
    res = SweepResult("lemma2.7")
    primes = [p for p in (3, 5, 7, 11, 13) if p <= bound]
    for p in primes:
        rep = verify_nullity_lemma(p, bound=bound)
        res.checked += rep.total
        if rep.violation:
            res.fail({"p": p, "matrix": rep.witness.expand().to_rows()})
        res.details[str(p)] = rep.to_dict()
        res.summary.append(
            f"{rep.total} matrices checked at p={p}, nullity-1 count: {rep.nullity_histogram.get(1, 0)}"
        )
    if include_two:
        rep = verify_nullity_lemma(2, bound=bound, allow_two=True)
        res.details["2"] = rep.to_dict()
        res.summary.append(
            f"p=2 demonstration: nullity-1 count {rep.nullity_histogram.get(1, 0)}, "
            f"witness {rep.witness.expand().to_rows() if rep.witness else None} (expected: the claim fails at p=2)"
        )
    return res


def lifted_block_sweep(samples: int = 500, seed: int = DEFAULT_SEED, primes=(2, 3, 5)) -> SweepResult:
    """Block shape of lifted linking matrices, and the orbital-separation test."""
    res = SweepResult("prop2.3")
    strongly = {p: 0 for p in primes}
    kinds = Counter()
    for k in range(samples):
        t = sample_tangle(seed + k)
        for p in primes:
            if not is_strongly_periodic(t, p):
                continue
            strongly[p] += 1
            res.checked += 1
            d = lift(t, p)
            a = linking_matrix(d)
            br = block_structure(d, a)
            quotient_split = is_orbitally_separated(t, p)
            good = (
                a.is_symmetric()
                and br.all_circulant
                and br.diagonal_symmetric
                and br.equal_framings
                and quotient_split == br.off_diagonal_zero
            )
            if not good:
                structural = not (a.is_symmetric() and br.all_circulant and br.diagonal_symmetric and br.equal_framings)
                kinds["structure" if structural else "separation"] += 1
                res.fail({
                    "seed": seed + k, "p": p, "blocks": br.to_dict(),
                    "quotient_split": quotient_split, "matrix": a.to_rows(),
                })
    res.details = {
        "strongly_periodic_per_p": {str(p): n for p, n in strongly.items()},
        "violation_kinds": {"structure": kinds["structure"], "separation": kinds["separation"]},
    }
    res.summary.append(
        f"{samples} tangles, {res.checked} strongly periodic lifts checked "
        + ", ".join(f"p={p}: {n}" for p, n in strongly.items())
    )
    res.summary.append(
        "all blocks circulant" if res.ok else
        f"{kinds['structure']} lifts violate the block structure, "
        f"{kinds['separation']} break the orbital-separation equivalence"
    )
    return res


def component_count_sweep(samples: int = 500, seed: int = DEFAULT_SEED, primes=(2, 3, 5)) -> SweepResult:
    """Winding criterion vs. component count of the lift."""
    res = SweepResult("lemma1.3")
    agree_true = 0
    for k in range(samples):
        t = sample_tangle(seed + k)
        for p in primes:
            res.checked += 1
            sp = bool(is_strongly_periodic(t, p))
            d = lift(t, p)
            by_count = len(d.components) == p * len(d.quotient)
            if sp != by_count:
                res.fail({"seed": seed + k, "p": p, "winding_criterion": sp, "count_criterion": by_count})
            agree_true += sp
    res.summary.append(f"{res.checked} (tangle, p) pairs checked, {agree_true} strongly periodic")
    res.summary.append("winding and component-count criteria agree" if res.ok else f"{res.violations} disagreements")
    return res


def two_by_two_sweep(bound: int = 25) -> SweepResult:
    """Groups presented by [[a, b], [b, a]] over the grid |a|, |b| <= bound."""
    res = SweepResult("thm2.2-cases")
    cases = {}
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            res.checked += 1
            g = two_by_two_group(a, b)
            snf = first_homology(IntMatrix.from_rows([[a, b], [b, a]]))
            if g != snf:
                res.fail({"a": a, "b": b, "formula": str(g), "snf": str(snf)})
                continue
            if a * a != b * b:
                case = symmetric_pair_case(a, b)
                cases[case] = cases.get(case, 0) + 1
                if not involution_parity_holds(g):
                    res.fail({"a": a, "b": b, "group": str(g), "case": case})
    res.details = {"cases": cases}
    res.summary.append(f"{res.checked} grid points, |a|,|b| <= {bound}; cases: {cases}")
    res.summary.append(
        "formula matches SNF; order-16 element or even Z/2, Z/4 counts everywhere"
        if res.ok else f"{res.violations} violations"
    )
    return res


def random_symmetric_circulant(p: int, rng: random.Random, lo: int = -9, hi: int = 9) -> SymmetricCirculantMatrix:
    free = [rng.randint(lo, hi) for _ in range(p // 2 + 1)]
    if p % 2 and rng.random() < 0.5:
        # zero row sum mod p makes the all-ones vector a kernel vector
        free[0] -= (free[0] + 2 * sum(free[1:])) % p
    return SymmetricCirculantMatrix(p, tuple(free))


def separated_nullity_sweep(samples: int = 1000, seed: int = DEFAULT_SEED, primes=(3, 5, 7)) -> SweepResult:
    """Block-diagonal symmetric circulant assemblies: nullity is additive and never 1."""
    res = SweepResult("prop2.10")
    rng = random.Random(seed)
    hist = {}
    for p in primes:
        for _ in range(samples):
            blocks = [random_symmetric_circulant(p, rng) for _ in range(rng.randint(1, 3))]
            rep = separated_nullity_check(assemble_block_circulant(blocks), p)
            res.checked += 1
            hist[rep.direct_nullity] = hist.get(rep.direct_nullity, 0) + 1
            if not rep.holds:
                res.fail({"p": p, "blocks": [b.first_row for b in blocks], **rep.to_dict()})
    res.details = {"nullity_histogram": {str(k): v for k, v in sorted(hist.items())}}
    res.summary.append(f"{res.checked} assemblies over p in {list(primes)}; nullities seen {sorted(hist)}")
    res.summary.append("additive and never 1" if res.ok else f"{res.violations} violations")
    return res


def random_symmetric_matrix(rng: random.Random, max_size: int = 8, lo: int = -9, hi: int = 9) -> IntMatrix:
    n = rng.randint(0, max_size)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(lo, hi)
    return IntMatrix.from_rows(rows, cols=n)


def mod_p_rank_bridge_sweep(samples: int = 200, seed: int = DEFAULT_SEED, primes=(2, 3, 5, 7)) -> SweepResult:
    """F_p nullity of a presentation vs. the rank read off its H_1."""
    res = SweepResult("lemma2.9")
    rng = random.Random(seed)
    for _ in range(samples):
        a = random_symmetric_matrix(rng)
        g = first_homology(a)
        for p in primes:
            res.checked += 1
            if nullity_mod_p(a, p) != g.rank_mod(p):
                res.fail({"matrix": a.to_rows(), "p": p, "nullity": nullity_mod_p(a, p), "group": str(g)})
    res.summary.append(f"{samples} presentations x {len(primes)} primes")
    res.summary.append("nullity equals free rank + p-primary count" if res.ok else f"{res.violations} mismatches")
    return res


SUITES = {
    "lemma2.6": circulant_det_congruence_sweep,
    "lemma2.7": symmetric_circulant_nullity_sweep,
    "prop2.3": lifted_block_sweep,
    "lemma1.3": component_count_sweep,
    "thm2.2-cases": two_by_two_sweep,
    "prop2.10": separated_nullity_sweep,
    "lemma2.9": mod_p_rank_bridge_sweep,
}
