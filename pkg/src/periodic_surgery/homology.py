"""First homology of surgered manifolds and the periodicity obstructions.

A symmetric linking matrix presents H_1 of the manifold obtained by
surgery on the link.  The obstructions below are necessary conditions
only: ``NO_OBSTRUCTION`` never means "periodic".
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from sympy import factorint

from .circulant import BlockCirculantMatrix
from .linalg import IntMatrix, nullity_mod_p, require_prime, smith_normal_form


class InvalidPresentationError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class FramedLinkPresentation:
    matrix: IntMatrix
    labels: Optional[tuple[str, ...]] = None
    periodic_meta: Optional[dict] = None

    def __post_init__(self):
        if not self.matrix.is_symmetric():
            raise InvalidPresentationError("linking matrix must be square and symmetric")
        if self.labels is not None and len(self.labels) != self.matrix.rows:
            raise InvalidPresentationError(
                f"{len(self.labels)} labels for a {self.matrix.rows}-component link"
            )

    @classmethod
    def from_rows(cls, rows, **kw) -> "FramedLinkPresentation":
        return cls(IntMatrix.from_rows(rows), **kw)


def _as_presentation(p) -> FramedLinkPresentation:
    if isinstance(p, FramedLinkPresentation):
        return p
    if isinstance(p, IntMatrix):
        return FramedLinkPresentation(p)
    return FramedLinkPresentation.from_rows(p)


@dataclass(frozen=True)
class AbelianGroupDecomposition:
    """Z^free_rank plus torsion, in invariant-factor and primary form.

    ``primary`` maps (prime, exponent) to multiplicity.
    """

    free_rank: int
    invariant_factors: tuple[int, ...]
    primary: tuple[tuple[tuple[int, int], int], ...] = field(default=())

    @classmethod
    def from_cyclic_orders(cls, orders: Sequence[int], free_rank: int = 0) -> "AbelianGroupDecomposition":
        """Normalize a direct sum of cyclic groups Z/o_1 + ... (orders 0 mean Z)."""
        free_rank += sum(1 for o in orders if o == 0)
        powers = Counter()
        for o in orders:
            if o:
                for ell, k in factorint(abs(o)).items():
                    powers[(ell, k)] += 1
        # rebuild invariant factors from the prime powers: largest powers go last
        by_prime = {}
        for (ell, k), mult in powers.items():
            by_prime.setdefault(ell, []).extend([k] * mult)
        length = max((len(v) for v in by_prime.values()), default=0)
        factors = [1] * length
        for ell, ks in by_prime.items():
            ks.sort()
            for i, k in enumerate(ks):
                factors[length - len(ks) + i] *= ell ** k
        return cls(free_rank, tuple(factors), tuple(sorted(powers.items())))

    @property
    def primary_terms(self) -> Counter:
        return Counter(dict(self.primary))

    def multiplicity(self, ell: int, k: int) -> int:
        """How many Z/ell^k summands in the canonical (primary) decomposition."""
        return self.primary_terms.get((ell, k), 0)

    def rank_mod(self, p: int) -> int:
        """dim of H tensor Z_p, which is dim H_1(M; Z_p) for surgery manifolds."""
        return self.free_rank + sum(m for (ell, _), m in self.primary if ell == p)

    def max_exponent(self, ell: int) -> int:
        return max((k for (q, k), _ in self.primary if q == ell), default=0)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"

    def primary_str(self) -> str:
        parts = [] if not self.free_rank else ["Z" if self.free_rank == 1 else f"Z^{self.free_rank}"]
        for (ell, k), mult in self.primary:
            term = f"Z/{ell ** k}"
            parts.append(term if mult == 1 else f"({term})^{mult}")
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {
            "group": str(self),
            "free_rank": self.free_rank,
            "invariant_factors": list(self.invariant_factors),
            "primary": [{"prime": ell, "exponent": k, "multiplicity": m} for (ell, k), m in self.primary],
        }


def first_homology(p) -> AbelianGroupDecomposition:
    """H_1 of the surgered manifold, read off the Smith normal form."""
    pres = _as_presentation(p)
    snf = smith_normal_form(pres.matrix)
    return AbelianGroupDecomposition.from_cyclic_orders(
        [d for d in snf.invariant_factors if d != 1], snf.free_rank
    )


def mod_p_rank(p, prime: int) -> int:
    """dim H_1(M; Z_p), as the F_p nullity of the linking matrix."""
    require_prime(prime)
    return nullity_mod_p(_as_presentation(p).matrix, prime)


class Verdict(str, enum.Enum):
    NOT_PERIODIC = "NotPeriodic"
    NO_OBSTRUCTION = "NoObstruction"
    PRECONDITION_NOT_MET = "PreconditionNotMet"


# rule labels are part of the JSON report format
RULE_ODD_PRIME = "Theorem 2.1"
RULE_INVOLUTION = "Theorem 2.2"
RULE_INVOLUTION_RANK = "Corollary 2.13"


@dataclass(frozen=True)
class ObstructionVerdict:
    verdict: Verdict
    rule: str
    certificate: dict

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "rule": self.rule, "certificate": self.certificate}


def odd_prime_obstruction(p, prime: int) -> ObstructionVerdict:
    """A Z_p action with circle fixed set (p odd) forces H_1(M; Z_p) != Z_p.

    So mod-p rank exactly 1 rules such an action out.
    """
    require_prime(prime)
    pres = _as_presentation(p)
    if prime == 2:
        return ObstructionVerdict(
            Verdict.PRECONDITION_NOT_MET, RULE_ODD_PRIME,
            {"p": 2, "reason": "criterion fails for p = 2 (S^2 x S^1 is 2-periodic with H_1(M; Z_2) = Z_2)"},
        )
    rank = mod_p_rank(pres, prime)
    cert = {"p": prime, "mod_p_rank": rank, "statement": f"mod-{prime} rank = {rank}"}
    verdict = Verdict.NOT_PERIODIC if rank == 1 else Verdict.NO_OBSTRUCTION
    return ObstructionVerdict(verdict, RULE_ODD_PRIME, cert)


def _two_primary_certificate(g: AbelianGroupDecomposition) -> dict:
    return {
        "group": str(g),
        "primary": g.primary_str(),
        "free_rank": g.free_rank,
        "z2_count": g.multiplicity(2, 1),
        "z4_count": g.multiplicity(2, 2),
        "z8_count": g.multiplicity(2, 3),
        "max_two_exponent": g.max_exponent(2),
        "mod_2_rank": g.rank_mod(2),
    }


def involution_obstruction(p) -> ObstructionVerdict:
    """Parity test for 2-periodic rational homology spheres.

    Applies when H_1 is finite with no element of order 16; then an odd
    number of Z/2 or of Z/4 summands rules out an involution with circle
    fixed set.  Z/8 summands are unconstrained.
    """
    g = first_homology(p)
    cert = _two_primary_certificate(g)
    if g.free_rank:
        cert["reason"] = "not a rational homology sphere (free rank > 0)"
        return ObstructionVerdict(Verdict.PRECONDITION_NOT_MET, RULE_INVOLUTION, cert)
    if g.max_exponent(2) >= 4:
        cert["reason"] = f"element of order {2 ** g.max_exponent(2)} (>= 16) present"
        return ObstructionVerdict(Verdict.PRECONDITION_NOT_MET, RULE_INVOLUTION, cert)
    odd = cert["z2_count"] % 2 or cert["z4_count"] % 2
    return ObstructionVerdict(Verdict.NOT_PERIODIC if odd else Verdict.NO_OBSTRUCTION, RULE_INVOLUTION, cert)


def involution_rank_check(p) -> ObstructionVerdict:
    """Without elements of order 8, dim H_1(M; Z_2) must be even."""
    g = first_homology(p)
    cert = _two_primary_certificate(g)
    if g.free_rank:
        cert["reason"] = "not a rational homology sphere (free rank > 0)"
        return ObstructionVerdict(Verdict.PRECONDITION_NOT_MET, RULE_INVOLUTION_RANK, cert)
    if g.max_exponent(2) >= 3:
        cert["reason"] = f"element of order {2 ** g.max_exponent(2)} (>= 8) present"
        return ObstructionVerdict(Verdict.PRECONDITION_NOT_MET, RULE_INVOLUTION_RANK, cert)
    dim = mod_p_rank(p, 2)
    cert["mod_2_rank"] = dim
    return ObstructionVerdict(
        Verdict.NOT_PERIODIC if dim % 2 else Verdict.NO_OBSTRUCTION, RULE_INVOLUTION_RANK, cert
    )


def two_by_two_group(a: int, b: int) -> AbelianGroupDecomposition:
    """Group presented by [[a, b], [b, a]]: Z/g + Z/(|a^2 - b^2| / g), g = gcd(a, b).

    Singular cases get a free summand instead of the second cyclic term.
    """
    g = gcd(a, b)
    det = a * a - b * b
    if g == 0:
        return AbelianGroupDecomposition.from_cyclic_orders([], 2)
    if det == 0:
        return AbelianGroupDecomposition.from_cyclic_orders([g], 1)
    return AbelianGroupDecomposition.from_cyclic_orders([g, abs(det) // g])


def symmetric_pair_case(a: int, b: int) -> str:
    """Which parity case of the 2 x 2 classification (a, b) falls into."""
    if a % 2 and b % 2:
        return "both-odd"
    if a % 2 == 0 and b % 2 == 0:
        g = gcd(a, b)
        return "both-even-odd-quotient" if (abs(a * a - b * b) // (g * g)) % 2 else "both-even-even-quotient"
    return "mixed"


def involution_parity_holds(g: AbelianGroupDecomposition) -> bool:
    """Order-16 element present, or even counts of Z/2 and of Z/4."""
    return g.max_exponent(2) >= 4 or (g.multiplicity(2, 1) % 2 == 0 and g.multiplicity(2, 2) % 2 == 0)


@dataclass(frozen=True)
class SeparatedNullityReport:
    p: int
    direct_nullity: int
    block_nullities: tuple[int, ...]

    @property
    def block_sum(self) -> int:
        return sum(self.block_nullities)

    @property
    def holds(self) -> bool:
        return self.direct_nullity == self.block_sum and self.direct_nullity != 1

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "direct_nullity": self.direct_nullity,
            "block_nullities": list(self.block_nullities),
            "block_sum": self.block_sum,
            "holds": self.holds,
        }


def separated_nullity_check(b: BlockCirculantMatrix, p: int) -> SeparatedNullityReport:
    """F_p nullity of a block-diagonal circulant linking matrix, two ways."""
    require_prime(p)
    if p == 2:
        raise PreconditionError("needs an odd prime")
    if b.p != p:
        raise PreconditionError(f"blocks are {b.p} x {b.p}, expected {p} x {p}")
    if not b.has_zero_off_diagonal():
        raise PreconditionError(
            "off-diagonal blocks must vanish (orbitally separated link); got a nonzero block"
        )
    direct = nullity_mod_p(b.expand(), p)
    blocks = tuple(nullity_mod_p(d.expand(), p) for d in b.diagonal_blocks)
    return SeparatedNullityReport(p, direct, blocks)
