import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qppsearch.qpp import (
    ALL_QPP,
    D_TARGET_MAX_ZETA,
    LS_QPP,
    ClassSelector,
    EmptyClass,
    NotAPermutation,
    Permutation,
    Qpp,
    enumerate_class,
    evaluate,
    group_candidates,
    invert,
    is_lpp_reducible,
    is_valid,
    lee_distance,
    nonlinearity,
    permutation_of,
    spread,
)


def brute_valid_pairs(L):
    """Independent double-loop oracle for class enumeration."""
    out = []
    for q1 in range(L):
        for q2 in range(1, L):
            table = [(q1 * x + q2 * x * x) % L for x in range(L)]
            if len(set(table)) == L:
                out.append((q1, q2))
    return out


def random_valid_qpps(L, count, seed):
    rng = np.random.default_rng(seed)
    pairs = brute_valid_pairs(L) if L <= 24 else None
    picks = []
    while len(picks) < count:
        if pairs:
            q1, q2 = pairs[rng.integers(len(pairs))]
        else:
            q1, q2 = int(rng.integers(L)), int(rng.integers(1, L))
            if not is_valid(Qpp(L, q1, q2)):
                continue
        picks.append(Qpp(L, int(q1), int(q2)))
    return picks


class TestEvaluate:
    def test_zero_input(self):
        assert evaluate(Qpp(40, 3, 10), 0) == 0

    def test_direct_arithmetic(self):
        assert evaluate(Qpp(40, 3, 10), 2) == 6

    def test_hand_worked_L8(self):
        q = Qpp(8, 1, 2)
        assert evaluate(q, 7) == 1
        assert [evaluate(q, x) for x in range(8)] == [0, 3, 2, 5, 4, 7, 6, 1]

    def test_domain_error(self):
        with pytest.raises(ValueError):
            evaluate(Qpp(40, 3, 10), 40)

    def test_no_overflow_large_L(self):
        L = 1 << 20
        q = Qpp(L, 3, 2 * L // 8)
        assert evaluate(q, L - 1) == (3 * (L - 1) + (2 * L // 8) * (L - 1) ** 2) % L


class TestPermutationOf:
    def test_hand_worked_table(self):
        assert permutation_of(Qpp(8, 1, 2)).table.tolist() == [0, 3, 2, 5, 4, 7, 6, 1]

    def test_lte_40_valid(self):
        p = permutation_of(Qpp(40, 3, 10))
        assert sorted(p.table.tolist()) == list(range(40))

    def test_non_bijection_collision(self):
        with pytest.raises(NotAPermutation) as exc:
            permutation_of(Qpp(40, 2, 0))
        i, j = exc.value.collision
        assert (2 * i) % 40 == (2 * j) % 40


class TestLeeDistance:
    @pytest.mark.parametrize("L,i,j,expect", [(10, 1, 9, 2), (10, 3, 3, 0), (8, 0, 4, 4)])
    def test_examples(self, L, i, j, expect):
        assert lee_distance(L, i, j) == expect

    @given(st.integers(2, 200), st.data())
    @settings(max_examples=60, deadline=None)
    def test_symmetry_and_range(self, L, data):
        i = data.draw(st.integers(0, L - 1))
        j = data.draw(st.integers(0, L - 1))
        d = lee_distance(L, i, j)
        assert d == lee_distance(L, j, i)
        assert 0 <= d <= L // 2


class TestSpread:
    def test_identity_is_two(self):
        for L in (2, 5, 17, 40):
            assert spread(Permutation(np.arange(L))) == 2

    def test_lte_40(self):
        assert spread(permutation_of(Qpp(40, 3, 10))) == 4

    def test_lte_448(self):
        assert spread(permutation_of(Qpp(448, 29, 168))) == 28

    def test_brute_force_oracle(self):
        rng = np.random.default_rng(5)
        for q in random_valid_qpps(24, 5, 9):
            p = permutation_of(q)
            t = p.table
            brute = min(
                lee_distance(24, i, j) + lee_distance(24, int(t[i]), int(t[j]))
                for i in range(24)
                for j in range(i + 1, 24)
            )
            assert spread(p) == brute

    def test_invariant_under_inverse(self):
        for q in random_valid_qpps(40, 6, 3):
            p = permutation_of(q)
            assert spread(p) == spread(invert(p))

    def test_invariant_under_shift(self):
        for q in random_valid_qpps(40, 4, 4):
            shifted = Qpp(q.L, q.q1, q.q2, q0=17)
            assert spread(permutation_of(q)) == spread(permutation_of(shifted))


class TestNonlinearity:
    def test_L40(self):
        m = nonlinearity(Qpp(40, 3, 10))
        assert (m.zeta, m.zeta_refined) == (2, 2)

    def test_L864(self):
        m = nonlinearity(Qpp(864, 17, 48))
        assert (m.zeta, m.zeta_refined) == (9, 8)

    def test_L400(self):
        assert nonlinearity(Qpp(400, 151, 40)).zeta_refined == 5

    def test_zeta_divides_L_and_refined_below(self):
        for q in random_valid_qpps(48, 8, 1):
            m = nonlinearity(q)
            assert q.L % m.zeta == 0
            assert 1 <= m.zeta_refined <= m.zeta <= q.L


class TestInvert:
    def test_identity(self):
        p = Permutation(np.arange(12))
        assert invert(p) == p

    def test_hand_worked(self):
        p = Permutation(np.array([0, 3, 2, 5, 4, 7, 6, 1]))
        assert invert(p).table.tolist() == [0, 7, 2, 1, 4, 3, 6, 5]

    def test_involution(self):
        for q in random_valid_qpps(40, 6, 2):
            p = permutation_of(q)
            assert invert(invert(p)) == p
            comp = p.table[invert(p).table]
            assert np.array_equal(comp, np.arange(40))


class TestLppReducible:
    def test_lte_168_reducible(self):
        assert is_lpp_reducible(Qpp(168, 101, 84))
        # the matching linear map is 17x
        p = permutation_of(Qpp(168, 101, 84))
        assert p.table.tolist() == [(17 * x) % 168 for x in range(168)]

    def test_lte_40_not_reducible(self):
        assert not is_lpp_reducible(Qpp(40, 3, 10))

    def test_pure_linear_is_reducible(self):
        assert is_lpp_reducible(Qpp(40, 3, 0))


class TestEnumerateClass:
    def test_ls_40_max_spread_and_members(self):
        cands = enumerate_class(40, ClassSelector(kind=LS_QPP))
        spreads = {spread(permutation_of(q)) for q in cands}
        assert spreads == {4}
        pairs = {(q.q1, q.q2) for q in cands}
        assert (3, 10) in pairs and (13, 30) in pairs

    def test_all_qpp_L8_equals_oracle(self):
        cands = enumerate_class(8, ClassSelector(kind=ALL_QPP, exclude_lpp_reducible=True))
        expect = [
            (q1, q2)
            for q1, q2 in brute_valid_pairs(8)
            if not is_lpp_reducible(Qpp(8, q1, q2))
        ]
        assert [(q.q1, q.q2) for q in cands] == sorted(expect)

    def test_d_target_624(self):
        cands = enumerate_class(624, ClassSelector(kind=D_TARGET_MAX_ZETA, d_target=22))
        pairs = {(q.q1, q.q2) for q in cands}
        assert (197, 546) in pairs
        assert all(nonlinearity(q).zeta_refined == 3 for q in cands)

    def test_empty_class(self):
        with pytest.raises(EmptyClass):
            enumerate_class(40, ClassSelector(kind=D_TARGET_MAX_ZETA, d_target=39))

    def test_sorted_output(self):
        cands = enumerate_class(32, ClassSelector(kind=ALL_QPP))
        keys = [(q.q1, q.q2) for q in cands]
        assert keys == sorted(keys)


class TestGrouping:
    def test_identical_permutations_share_group(self):
        # (q1, q2) and (q1 + L/2, q2 + L/2) give the same permutation
        a, b = Qpp(40, 3, 10), Qpp(40, 23, 30)
        assert permutation_of(a) == permutation_of(b)
        groups = group_candidates([a, b])
        assert len(groups) == 1
        assert groups[0].representative == a

    def test_winning_group_L40_has_four_members(self):
        cands = enumerate_class(40, ClassSelector(kind=LS_QPP))
        groups = group_candidates(cands)
        target = [g for g in groups if g.representative == Qpp(40, 13, 30)]
        assert len(target) == 1
        assert len(target[0].members) == 4

    def test_partition_properties(self):
        cands = enumerate_class(48, ClassSelector(kind=LS_QPP))
        groups = group_candidates(cands)
        seen = [q for g in groups for q in g.members]
        assert sorted(seen, key=lambda q: (q.q1, q.q2)) == cands
        for g in groups:
            assert g.representative == min(g.members, key=lambda q: (q.q1, q.q2))
            pf = permutation_of(g.representative)
            pi = invert(pf)
            for q in g.members:
                assert permutation_of(q) in (pf, pi)
