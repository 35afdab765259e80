import random

import pytest
from hypothesis import given, strategies as st

from periodic_surgery.circulant import SymmetricCirculantMatrix, assemble_block_circulant
from periodic_surgery.homology import (
    AbelianGroupDecomposition,
    FramedLinkPresentation,
    InvalidPresentationError,
    PreconditionError,
    Verdict,
    first_homology,
    involution_obstruction,
    involution_parity_holds,
    involution_rank_check,
    mod_p_rank,
    odd_prime_obstruction,
    separated_nullity_check,
    two_by_two_group,
)
from periodic_surgery.linalg import IntMatrix, InvalidModulusError, nullity_mod_p

from conftest import brute_nullity

G = AbelianGroupDecomposition.from_cyclic_orders


def pres(rows):
    return FramedLinkPresentation.from_rows(rows)


class TestGroups:
    def test_normalization(self):
        g = G([2, 6])
        assert g.invariant_factors == (2, 6)
        assert g.primary == (((2, 1), 2), ((3, 1), 1))
        assert G([4, 3]).invariant_factors == (12,)
        assert str(G([], 2)) == "Z^2" and str(G([])) == "0"
        assert str(G([8], 1)) == "Z + Z/8"

    def test_rank_mod(self):
        g = G([2, 4, 9], 1)
        assert g.rank_mod(2) == 3 and g.rank_mod(3) == 2 and g.rank_mod(5) == 1

    @given(st.lists(st.integers(1, 200), max_size=5), st.integers(0, 3))
    def test_invariant_factors_refine_to_primary(self, orders, free):
        g = G(orders, free)
        d = g.invariant_factors
        assert all(x > 1 for x in d)
        assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
        prod = 1
        for x in orders:
            prod *= x
        assert g.order == prod if not free else g.order is None
        assert G(list(d), free) == g


class TestFirstHomology:
    def test_sphere(self):
        assert str(first_homology(IntMatrix.zeros(0))) == "0"

    def test_hopf_links(self):
        assert str(first_homology(pres([[1, -1], [-1, 1]]))) == "Z"
        assert str(first_homology(pres([[-1, -1], [-1, -1]]))) == "Z"

    def test_lens(self):
        assert str(first_homology(pres([[3, 1], [1, 3]]))) == "Z/8"

    def test_asymmetric(self):
        with pytest.raises(InvalidPresentationError):
            pres([[1, 2], [3, 4]])
        with pytest.raises(InvalidPresentationError):
            FramedLinkPresentation(IntMatrix.identity(2), labels=("a",))


class TestModPRank:
    def test_lens_three(self):
        assert mod_p_rank(pres([[3]]), 3) == 1

    def test_hopf_mod_five(self):
        assert brute_nullity([[1, -1], [-1, 1]], 5) == 1
        assert mod_p_rank(pres([[1, -1], [-1, 1]]), 5) == 1

    def test_identity(self):
        assert mod_p_rank(IntMatrix.identity(5), 7) == 0

    def test_composite(self):
        with pytest.raises(InvalidModulusError):
            mod_p_rank(IntMatrix.identity(2), 6)

    def test_bridge_random(self):
        rng = random.Random(5)
        for _ in range(200):
            n = rng.randint(0, 8)
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    rows[i][j] = rows[j][i] = rng.randint(-9, 9)
            a = IntMatrix.from_rows(rows, cols=n)
            g = first_homology(a)
            for p in (2, 3, 5, 7):
                assert mod_p_rank(a, p) == g.rank_mod(p)


class TestOddPrime:
    def test_lens_space(self):
        v = odd_prime_obstruction(pres([[3]]), 3)
        assert v.verdict is Verdict.NOT_PERIODIC
        assert v.certificate["statement"] == "mod-3 rank = 1"

    def test_s2xs1(self):
        assert brute_nullity([[1, -1], [-1, 1]], 3) == 1
        assert odd_prime_obstruction(pres([[1, -1], [-1, 1]]), 3).verdict is Verdict.NOT_PERIODIC

    def test_sphere(self):
        assert odd_prime_obstruction(IntMatrix.zeros(0), 5).verdict is Verdict.NO_OBSTRUCTION

    def test_p_two(self):
        assert odd_prime_obstruction(pres([[3]]), 2).verdict is Verdict.PRECONDITION_NOT_MET

    @given(st.lists(st.integers(-30, 30), min_size=1, max_size=5), st.sampled_from([3, 5, 7]))
    def test_fires_exactly_on_rank_one(self, diag, p):
        a = IntMatrix.diag(diag)
        v = odd_prime_obstruction(a, p)
        assert (v.verdict is Verdict.NOT_PERIODIC) == (nullity_mod_p(a, p) == 1)


class TestInvolution:
    def test_lens_8_3(self):
        assert involution_obstruction(pres([[3, 1], [1, 3]])).verdict is Verdict.NO_OBSTRUCTION

    def test_single_z2(self):
        v = involution_obstruction(IntMatrix.diag([2, 3]))
        assert v.verdict is Verdict.NOT_PERIODIC and v.certificate["z2_count"] == 1

    def test_order_sixteen(self):
        assert involution_obstruction(IntMatrix.diag([16])).verdict is Verdict.PRECONDITION_NOT_MET

    def test_infinite(self):
        assert involution_obstruction(pres([[0]])).verdict is Verdict.PRECONDITION_NOT_MET

    def test_pairs(self):
        assert involution_obstruction(IntMatrix.diag([2, 2, 4, 4, 8])).verdict is Verdict.NO_OBSTRUCTION
        assert involution_obstruction(IntMatrix.diag([2, 2, 4])).verdict is Verdict.NOT_PERIODIC

    def test_rank_check(self):
        assert involution_rank_check(IntMatrix.diag([2, 2])).verdict is Verdict.NO_OBSTRUCTION
        assert brute_nullity([[4]], 2) == 1
        assert involution_rank_check(IntMatrix.diag([4])).verdict is Verdict.NOT_PERIODIC
        assert involution_rank_check(IntMatrix.diag([8])).verdict is Verdict.PRECONDITION_NOT_MET
        assert involution_rank_check(pres([[0]])).verdict is Verdict.PRECONDITION_NOT_MET


class TestTwoByTwo:
    def test_examples(self):
        assert str(two_by_two_group(3, 1)) == "Z/8"
        assert str(two_by_two_group(1, 1)) == "Z"
        assert str(two_by_two_group(0, 0)) == "Z^2"
        g = two_by_two_group(4, 2)
        assert g.invariant_factors == (2, 6)
        assert g.primary == (((2, 1), 2), ((3, 1), 1))
        assert g == first_homology(pres([[4, 2], [2, 4]]))

    @given(st.integers(-60, 60), st.integers(-60, 60))
    def test_matches_smith(self, a, b):
        assert two_by_two_group(a, b) == first_homology(pres([[a, b], [b, a]]))

    @given(st.integers(-200, 200), st.integers(-200, 200))
    def test_parity_classification(self, a, b):
        if a * a != b * b:
            assert involution_parity_holds(two_by_two_group(a, b))


class TestSeparatedNullity:
    def test_identity_block(self):
        r = separated_nullity_check(assemble_block_circulant([SymmetricCirculantMatrix(3, (1, 0))]), 3)
        assert r.direct_nullity == 0 and r.holds

    def test_zero_block(self):
        r = separated_nullity_check(assemble_block_circulant([SymmetricCirculantMatrix(3, (0, 0))]), 3)
        assert r.direct_nullity == 3 and r.holds

    def test_nonzero_off_diagonal(self):
        d = SymmetricCirculantMatrix(3, (1, 0))
        with pytest.raises(PreconditionError, match="off-diagonal"):
            separated_nullity_check(assemble_block_circulant([d, d], {(0, 1): (1, 0, 0)}), 3)

    def test_size_mismatch(self):
        with pytest.raises(PreconditionError):
            separated_nullity_check(assemble_block_circulant([SymmetricCirculantMatrix(5, (1, 0, 0))]), 3)
