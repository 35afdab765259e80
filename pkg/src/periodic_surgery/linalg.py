"""Exact integer matrices: determinant, Smith normal form, rank over F_p.

Everything here works on Python ints, so there is no overflow and no
rounding.  The matrices involved are linking matrices of small links, so
the straightforward cubic algorithms are plenty.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from sympy import isprime


class DimensionError(ValueError):
    """Matrix shapes do not fit the requested operation."""


class InvalidModulusError(ValueError):
    """A modulus that should be prime is not."""


def require_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or p < 2 or not isprime(p):
        raise InvalidModulusError(f"modulus must be a prime, got {p!r}")
    return p


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major matrix of arbitrary-precision integers."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError(f"negative shape {self.rows}x{self.cols}")
        entries = tuple(int(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(entries)} entries do not fill a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise DimensionError(f"row {i} has {len(r)} entries, expected {cols}")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "IntMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values: Iterable[int]) -> "IntMatrix":
        values = list(values)
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def block_diag(cls, *blocks: "IntMatrix") -> "IntMatrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(out, cols=m)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {ij} out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows([[self[i, j] for j in col_idx] for i in row_idx], cols=len(col_idx))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum(r[k] * other[k, j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def mod(self, p: int) -> "ModPMatrix":
        return ModPMatrix(p, self.rows, self.cols, tuple(x % p for x in self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})"


@dataclass(frozen=True)
class ModPMatrix:
    """Matrix over the field with p elements, entries stored in [0, p)."""

    p: int
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        require_prime(self.p)
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError("entry count does not match shape")
        if any(not 0 <= x < self.p for x in self.entries):
            raise ValueError("entries must be reduced modulo p")

    def rank(self) -> int:
        return _rank_mod_p(
            [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)],
            self.rows, self.cols, self.p,
        )

    def nullity(self) -> int:
        return self.cols - self.rank()


def _rank_mod_p(a: list[list[int]], m: int, n: int, p: int) -> int:
    # a is consumed in place; entries already reduced mod p
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, m) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        inv = pow(prow[c], -1, p)
        for j in range(c, n):
            prow[j] = prow[j] * inv % p
        for i in range(rank + 1, m):
            f = a[i][c]
            if f:
                ri = a[i]
                for j in range(c, n):
                    ri[j] = (ri[j] - f * prow[j]) % p
        rank += 1
        if rank == m:
            break
    return rank


def rank_mod_p(a: IntMatrix, p: int) -> int:
    """Rank of ``a`` after reduction modulo the prime ``p``."""
    return a.mod(require_prime(p)).rank()


def nullity_mod_p(a: IntMatrix, p: int) -> int:
    """Kernel dimension of ``a`` over F_p (acting on column vectors)."""
    return a.cols - rank_mod_p(a, p)


def determinant(a: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not a.is_square:
        raise DimensionError(f"determinant of non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            ri = m[i]
            rk = m[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                ri[j] = (ri[j] * pkk - mik * rk[j]) // prev
            ri[k] = 0
        prev = pkk
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """Diagonal form ``left @ A @ right = diag(d_1, ..., d_r, 0, ...)``.

    ``invariant_factors`` keeps unit factors; callers presenting a group
    drop the 1s themselves.
    """

    invariant_factors: tuple[int, ...]
    free_rank: int
    shape: tuple[int, int]
    left_transform: Optional[IntMatrix] = field(default=None, compare=False)
    right_transform: Optional[IntMatrix] = field(default=None, compare=False)

    def diagonal_matrix(self) -> IntMatrix:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.invariant_factors):
            out[i][i] = d
        return IntMatrix.from_rows(out, cols=n)


def _smallest_nonzero(a: list[list[int]], t: int, m: int, n: int):
    best = None
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    return best


def smith_normal_form(a: IntMatrix, witnesses: bool = False) -> SmithDecomposition:
    """Smith normal form over Z.

    Pivot rule: the nonzero entry of least absolute value in the remaining
    submatrix, ties to the lowest (row, col).  With ``witnesses`` the
    unimodular transforms are accumulated as well.
    """
    m, n = a.rows, a.cols
    A = a.to_rows()
    L = IntMatrix.identity(m).to_rows() if witnesses else None
    R = IntMatrix.identity(n).to_rows() if witnesses else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if L is not None:
            L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if R is not None:
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        if L is not None:
            L[dst] = [x + q * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        if R is not None:
            for row in R:
                row[dst] += q * row[src]

    factors = []
    t = 0
    while t < min(m, n):
        best = _smallest_nonzero(A, t, m, n)
        if best is None:
            break
        while True:
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    dirty = dirty or A[t][j] != 0
            if not dirty:
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad, 1)
            best = _smallest_nonzero(A, t, m, n)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if L is not None:
                L[t] = [-x for x in L[t]]
        factors.append(A[t][t])
        t += 1

    return SmithDecomposition(
        invariant_factors=tuple(factors),
        free_rank=min(m, n) - len(factors),
        shape=(m, n),
        left_transform=IntMatrix.from_rows(L, cols=m) if witnesses else None,
        right_transform=IntMatrix.from_rows(R, cols=n) if witnesses else None,
    )
