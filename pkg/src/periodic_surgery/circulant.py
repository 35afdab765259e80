"""Circulant and block-circulant matrices kept in first-row form.

Also hosts the two finite-field facts about circulants that the homology
obstructions lean on: the determinant congruence modulo the size, and the
exhaustive check that a symmetric p x p circulant over F_p never has a
one-dimensional kernel when p is odd.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import singledispatch
from typing import Iterator, Mapping, Optional, Sequence

from .linalg import DimensionError, IntMatrix, nullity_mod_p, require_prime

DEFAULT_ENUMERATION_BOUND = 11
# above this size the exact per-matrix route gets slow; switch to the kernel
EXACT_ENGINE_LIMIT = 7


@dataclass(frozen=True)
class CirculantMatrix:
    first_row: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "first_row", tuple(int(x) for x in self.first_row))

    @property
    def n(self) -> int:
        return len(self.first_row)

    def expand(self) -> IntMatrix:
        return _circulant_dense(self.first_row)

    def transpose(self) -> "CirculantMatrix":
        # column 0 of the expansion, read downward, is the new first row
        n = self.n
        return CirculantMatrix(tuple(self.first_row[(-i) % n] for i in range(n)))


def symmetric_param_count(p: int) -> int:
    return p // 2 + 1


@dataclass(frozen=True)
class SymmetricCirculantMatrix:
    """Symmetric circulant of size ``p`` stored by its free parameters.

    The first row is ``a_1, ..., a_p`` with ``a_j = a_{p+2-j}``, so only
    ``a_1, ..., a_{p//2+1}`` are free.
    """

    p: int
    free_params: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "free_params", tuple(int(x) for x in self.free_params))
        if self.p < 1:
            raise DimensionError("size must be positive")
        if len(self.free_params) != symmetric_param_count(self.p):
            raise DimensionError(
                f"size {self.p} needs {symmetric_param_count(self.p)} free parameters, "
                f"got {len(self.free_params)}"
            )

    @classmethod
    def from_first_row(cls, row: Sequence[int]) -> "SymmetricCirculantMatrix":
        n = len(row)
        if any(row[j] != row[(-j) % n] for j in range(n)):
            raise ValueError(f"first row {tuple(row)} is not palindromic after a_1")
        return cls(n, tuple(row[: symmetric_param_count(n)]))

    @property
    def first_row(self) -> tuple[int, ...]:
        return tuple(self.free_params[min(j, self.p - j)] for j in range(self.p))

    def as_circulant(self) -> CirculantMatrix:
        return CirculantMatrix(self.first_row)

    def expand(self) -> IntMatrix:
        return _circulant_dense(self.first_row)


@dataclass(frozen=True)
class BlockCirculantMatrix:
    """Symmetric matrix of ``n x n`` blocks, each a ``p x p`` circulant.

    Only blocks on and above the diagonal are stored; block (j, i) is the
    transpose of block (i, j).
    """

    p: int
    diagonal_blocks: tuple[SymmetricCirculantMatrix, ...]
    off_diagonal_blocks: Mapping[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.diagonal_blocks)

    def block(self, i: int, j: int) -> CirculantMatrix:
        if i == j:
            return self.diagonal_blocks[i].as_circulant()
        if i < j:
            row = self.off_diagonal_blocks.get((i, j))
            return CirculantMatrix(row if row is not None else (0,) * self.p)
        return self.block(j, i).transpose()

    def has_zero_off_diagonal(self) -> bool:
        return all(not any(r) for r in self.off_diagonal_blocks.values())

    def expand(self) -> IntMatrix:
        p, n = self.p, self.n
        out = [[0] * (n * p) for _ in range(n * p)]
        for bi in range(n):
            for bj in range(n):
                blk = self.block(bi, bj).expand()
                for k in range(p):
                    for s in range(p):
                        out[bi * p + k][bj * p + s] = blk[k, s]
        return IntMatrix.from_rows(out, cols=n * p)


def _circulant_dense(row: Sequence[int]) -> IntMatrix:
    n = len(row)
    return IntMatrix(n, n, tuple(row[(j - i) % n] for i in range(n) for j in range(n)))


@singledispatch
def expand(c) -> IntMatrix:
    raise TypeError(f"cannot expand {type(c).__name__}")


@expand.register
def _(c: CirculantMatrix) -> IntMatrix:
    return c.expand()


@expand.register
def _(c: SymmetricCirculantMatrix) -> IntMatrix:
    return c.expand()


@expand.register
def _(c: BlockCirculantMatrix) -> IntMatrix:
    return c.expand()


def is_circulant(a: IntMatrix) -> bool:
    n = a.rows
    return a.is_square and all(
        a[i, j] == a[(i + 1) % n, (j + 1) % n] for i in range(n) for j in range(n)
    )


def det_mod_n_formula(first_row: Sequence[int], n: int) -> int:
    """Residue of the circulant determinant modulo its size.

    Odd ``n``: sum of ``a_i**n``.  Even ``n``: the same with alternating
    signs starting from ``+a_1**n``.
    """
    if len(first_row) != n or n < 1:
        raise DimensionError(f"first row has length {len(first_row)}, expected {n} >= 1")
    if n % 2:
        return sum(pow(a, n, n) for a in first_row) % n
    return sum((-1) ** k * pow(a, n, n) for k, a in enumerate(first_row)) % n


def enumerate_symmetric_circulants(
    p: int,
    bound: int = DEFAULT_ENUMERATION_BOUND,
    *,
    allow_two: bool = False,
    start: int = 0,
    stop: Optional[int] = None,
) -> Iterator[SymmetricCirculantMatrix]:
    """Yield every symmetric p x p circulant over F_p, ``p**(p//2+1)`` of them.

    ``start``/``stop`` select a slice of the fixed enumeration order so that
    disjoint chunks can be processed independently.  p = 2 is refused
    unless ``allow_two`` is set.
    """
    _check_enumerable(p, bound, allow_two)
    params = itertools.product(range(p), repeat=symmetric_param_count(p))
    for free in itertools.islice(params, start, stop):
        yield SymmetricCirculantMatrix(p, free)


def _check_enumerable(p: int, bound: int, allow_two: bool) -> None:
    if p == 2:
        if not allow_two:
            raise ValueError("p = 2 is excluded from the odd-prime enumeration; pass allow_two=True")
        return
    if p % 2 == 0:
        raise ValueError(f"enumeration needs an odd prime, got {p}")
    require_prime(p)
    if p > bound:
        raise ValueError(f"p = {p} exceeds the enumeration bound {bound}")


@dataclass
class NullityReport:
    p: int
    total: int = 0
    nullity_histogram: Counter = field(default_factory=Counter)
    witness: Optional[SymmetricCirculantMatrix] = None

    @property
    def violation(self) -> bool:
        return self.nullity_histogram.get(1, 0) > 0

    def merge(self, other: "NullityReport") -> "NullityReport":
        if other.p != self.p:
            raise ValueError("cannot merge reports for different primes")
        return NullityReport(
            self.p,
            self.total + other.total,
            self.nullity_histogram + other.nullity_histogram,
            self.witness if self.witness is not None else other.witness,
        )

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "total": self.total,
            "nullity_histogram": {str(k): v for k, v in sorted(self.nullity_histogram.items())},
            "violation": self.violation,
            "witness": None if self.witness is None else self.witness.expand().to_rows(),
        }


def verify_nullity_lemma(
    p: int,
    bound: int = DEFAULT_ENUMERATION_BOUND,
    *,
    allow_two: bool = False,
    engine: str = "auto",
    start: int = 0,
    stop: Optional[int] = None,
) -> NullityReport:
    """Nullity histogram over all symmetric p x p circulants over F_p.

    ``engine`` is ``"exact"`` (the generic F_p elimination on each matrix),
    ``"compiled"`` (a numba loop doing the same elimination), or ``"auto"``
    which picks exact for small p.
    """
    _check_enumerable(p, bound, allow_two)
    if engine == "auto":
        engine = "exact" if p <= EXACT_ENGINE_LIMIT else "compiled"
    if engine == "compiled":
        from ._kernels import circulant_nullity_histogram

        total = p ** symmetric_param_count(p)
        stop = total if stop is None else min(stop, total)
        counts, first = circulant_nullity_histogram(p, start, max(stop, start))
        hist = Counter({k: int(v) for k, v in enumerate(counts) if v})
        witness = None
        if first >= 0:
            witness = next(enumerate_symmetric_circulants(p, bound, allow_two=allow_two, start=first))
        return NullityReport(p, int(counts.sum()), hist, witness)
    if engine != "exact":
        raise ValueError(f"unknown engine {engine!r}")

    report = NullityReport(p)
    for c in enumerate_symmetric_circulants(p, bound, allow_two=allow_two, start=start, stop=stop):
        k = nullity_mod_p(c.expand(), p)
        report.total += 1
        report.nullity_histogram[k] += 1
        if k == 1 and report.witness is None:
            report.witness = c
    return report


def assemble_block_circulant(
    diag: Sequence[SymmetricCirculantMatrix],
    off_diag: Optional[Mapping[tuple[int, int], Sequence[int]]] = None,
) -> BlockCirculantMatrix:
    if not diag:
        raise DimensionError("need at least one diagonal block")
    p = diag[0].p
    if any(d.p != p for d in diag):
        raise DimensionError("diagonal blocks have different sizes")
    n = len(diag)
    rows = {}
    for (i, j), row in (off_diag or {}).items():
        if not (0 <= i < j < n):
            raise DimensionError(f"off-diagonal key {(i, j)} must satisfy 0 <= i < j < {n}")
        if len(row) != p:
            raise DimensionError(f"off-diagonal block {(i, j)} has length {len(row)}, expected {p}")
        rows[(i, j)] = tuple(int(x) for x in row)
    return BlockCirculantMatrix(p, tuple(diag), rows)
