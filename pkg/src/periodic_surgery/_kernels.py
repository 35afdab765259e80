"""Compiled inner loop for the symmetric-circulant nullity census.

Same elimination as ``linalg._rank_mod_p`` but on int64 scratch space, so
the p = 11 sweep (1.77M matrices) fits in seconds.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _nullity(a, p):
    n = a.shape[0]
    rank = 0
    for c in range(n):
        piv = -1
        for i in range(rank, n):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(n):
                tmp = a[rank, j]
                a[rank, j] = a[piv, j]
                a[piv, j] = tmp
        inv = 1
        base = a[rank, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for j in range(c, n):
            a[rank, j] = a[rank, j] * inv % p
        for i in range(rank + 1, n):
            f = a[i, c]
            if f != 0:
                for j in range(c, n):
                    a[i, j] = (a[i, j] - f * a[rank, j]) % p
        rank += 1
    return n - rank


@njit(cache=True)
def _histogram(p, start, stop):
    k = p // 2 + 1
    counts = np.zeros(p + 1, dtype=np.int64)
    first = -1
    free = np.zeros(k, dtype=np.int64)
    row = np.zeros(p, dtype=np.int64)
    a = np.zeros((p, p), dtype=np.int64)
    for idx in range(start, stop):
        # decode idx in base p, most significant digit first (itertools.product order)
        x = idx
        for d in range(k - 1, -1, -1):
            free[d] = x % p
            x //= p
        for j in range(p):
            row[j] = free[min(j, p - j)]
        for i in range(p):
            for j in range(p):
                a[i, j] = row[(j - i) % p]
        nul = _nullity(a, p)
        counts[nul] += 1
        if nul == 1 and first < 0:
            first = idx
    return counts, first


def circulant_nullity_histogram(p: int, start: int, stop: int):
    return _histogram(np.int64(p), np.int64(start), np.int64(stop))
