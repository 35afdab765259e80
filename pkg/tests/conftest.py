"""Independent oracles shared by the test modules.

None of these touch the package's elimination code: determinants by
cofactor expansion, kernels by brute-force counting, Smith invariants by
gcds of minors.
"""

import itertools
from math import gcd

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


def cofactor_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def brute_nullity(rows, p):
    """log_p of the number of kernel vectors over F_p."""
    n = len(rows[0]) if rows else 0
    count = 0
    for x in itertools.product(range(p), repeat=n):
        if all(sum(a * b for a, b in zip(r, x)) % p == 0 for r in rows):
            count += 1
    k = 0
    while p ** k < count:
        k += 1
    assert p ** k == count
    return k


def minors_invariant_factors(rows):
    """Invariant factors via determinantal divisors d_k / d_{k-1}."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                g = gcd(g, cofactor_det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def circulant_rows(first_row):
    n = len(first_row)
    return [[first_row[(j - i) % n] for j in range(n)] for i in range(n)]


# acceptance verdict lines, echoed in the terminal summary so they survive output capture
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
