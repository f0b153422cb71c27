from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from oracles import sigma_table, tb_rot
from petalknots.errors import (
    Empty,
    EvenPetalCount,
    IndexOutOfRange,
    NotBijection,
    NotStrictlyOrdered,
    TooSmall,
)
from petalknots.petal_core import (
    LagrangianPetalDiagram,
    PetalPermutation,
    canonical_rotation,
    canonical_twists,
    cyclic_ascents,
    cyclic_shift,
    lambda_family,
    rotation_number,
    sign_sigma,
    sigma_sum,
    sigma_sum_bound,
    stabilize,
    tb_upper_bound,
    thurston_bennequin,
    validate_permutation,
)

odd_n = st.integers(min_value=0, max_value=5).map(lambda m: 2 * m + 1)
perms = odd_n.flatmap(lambda n: st.permutations(range(1, n + 1))).map(PetalPermutation)


def P(*hs):
    return PetalPermutation(hs)


class TestValidation:
    def test_accepts_odd_bijections(self):
        assert validate_permutation([1, 3, 2]).heights == (1, 3, 2)
        assert validate_permutation((1,)).n == 1

    @pytest.mark.parametrize(
        "values, exc",
        [
            ((), Empty),
            ((1, 1, 2), NotBijection),
            ((0, 1, 2), NotBijection),
            ((1, 2, 4), NotBijection),
            ((1, 2), EvenPetalCount),
            ((2, 1, 4, 3), EvenPetalCount),
        ],
    )
    def test_rejects(self, values, exc):
        with pytest.raises(exc):
            validate_permutation(values)

    def test_str_round_trips(self):
        assert str(P(1, 4, 2, 5, 3)) == "1,4,2,5,3"


class TestSigma:
    def test_three_petal_table(self):
        p = P(1, 3, 2)
        assert [sign_sigma(p, 1, 2), sign_sigma(p, 1, 3), sign_sigma(p, 2, 3)] == [1, -1, -1]

    def test_errors(self):
        p = P(1, 3, 2)
        with pytest.raises(NotStrictlyOrdered):
            sign_sigma(p, 2, 2)
        with pytest.raises(NotStrictlyOrdered):
            sign_sigma(p, 3, 1)
        with pytest.raises(IndexOutOfRange):
            sign_sigma(p, 0, 2)
        with pytest.raises(IndexOutOfRange):
            sign_sigma(p, 1, 4)

    @given(perms)
    def test_sum_matches_table(self, p):
        table = sigma_table(p.heights)
        assert sigma_sum(p) == sum(table.values())
        for (i, j), s in table.items():
            assert sign_sigma(p, i, j) == s

    @given(perms)
    def test_sum_is_bounded(self, p):
        assert sigma_sum(p) <= sigma_sum_bound(p.n)


class TestInvariants:
    @pytest.mark.parametrize(
        "heights, tb, rot, k",
        [
            ((1, 3, 2), -2, 1, 1),
            ((1,), -1, 0, 1),
            ((1, 2, 3), -1, 0, 2),
            ((1, 4, 2, 5, 3), -6, 1, 2),
            ((1, 3, 5, 2, 4), 1, 0, 3),
        ],
    )
    def test_hand_values(self, heights, tb, rot, k):
        d = canonical_twists(P(*heights))
        r = thurston_bennequin(d)
        assert (r.tb, rotation_number(d), r.k) == (tb, rot, k)

    def test_ascents(self):
        assert cyclic_ascents(P(1, 3, 2)) == (1,)
        assert cyclic_ascents(P(1, 2, 3)) == (1, 2)
        assert canonical_twists(P(1, 4, 2, 5, 3)).twists == (1, 0, 1, 0, 0)

    def test_single_petal_needs_a_twist(self):
        assert canonical_twists(P(1)).twists == (1,)
        with pytest.raises(TooSmall):
            LagrangianPetalDiagram(P(1), (0,))

    def test_diagram_validation(self):
        with pytest.raises(IndexOutOfRange):
            LagrangianPetalDiagram(P(1, 3, 2), (1, 0))
        with pytest.raises(NotBijection):
            LagrangianPetalDiagram(P(1, 3, 2), (1, -1, 1))

    @given(perms)
    def test_against_oracle(self, p):
        d = canonical_twists(p)
        assert (thurston_bennequin(d).tb, rotation_number(d)) == tb_rot(p.heights)

    @given(perms)
    def test_at_least_one_twist(self, p):
        assert canonical_twists(p).k >= 1

    @given(perms, st.integers(min_value=0, max_value=20))
    def test_cyclic_invariance(self, p, r):
        a, b = canonical_twists(p), canonical_twists(cyclic_shift(p, r))
        assert thurston_bennequin(a).tb == thurston_bennequin(b).tb
        assert rotation_number(a) == rotation_number(b)

    @given(perms)
    def test_tb_plus_rot_is_odd(self, p):
        d = canonical_twists(p)
        assert (thurston_bennequin(d).tb + rotation_number(d)) % 2 == 1

    @given(perms)
    def test_upper_bound(self, p):
        assert thurston_bennequin(canonical_twists(p)).tb <= tb_upper_bound(p.n)

    @given(perms, st.data())
    def test_stabilization(self, p, data):
        d = canonical_twists(p)
        q = data.draw(st.integers(min_value=1, max_value=p.n))
        s = stabilize(d, q)
        assert thurston_bennequin(s).tb == thurston_bennequin(d).tb - 1
        assert rotation_number(s) == rotation_number(d) - 1
        assert not s.standard


class TestRotation:
    def test_canonical_rotation_puts_top_strand_first(self):
        assert canonical_rotation(P(3, 1, 2)).heights == (1, 2, 3)
        assert cyclic_shift(P(1, 3, 2), 1).heights == (3, 2, 1)

    def test_all_rotations_share_a_canonical_form(self):
        for hs in permutations(range(1, 6)):
            p = P(*hs)
            forms = {canonical_rotation(cyclic_shift(p, r)) for r in range(5)}
            assert len(forms) == 1 and forms.pop().heights[0] == 1


class TestFamily:
    def test_first_members(self):
        assert lambda_family(3).heights == (1, 3, 2)
        assert lambda_family(5).heights == (1, 4, 2, 5, 3)
        assert lambda_family(7).heights == (1, 5, 2, 6, 3, 7, 4)

    @pytest.mark.parametrize("n", range(3, 17, 2))
    def test_half_twist_count(self, n):
        assert canonical_twists(lambda_family(n)).k == (n - 1) // 2

    def test_errors(self):
        with pytest.raises(EvenPetalCount):
            lambda_family(4)
        with pytest.raises(TooSmall):
            lambda_family(1)

    def test_bounds(self):
        assert [tb_upper_bound(n) for n in (1, 3, 5, 7)] == [-1, 0, 3, 8]
        with pytest.raises(EvenPetalCount):
            tb_upper_bound(4)
