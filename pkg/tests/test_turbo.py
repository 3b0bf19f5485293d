import numpy as np
import pytest
from fractions import Fraction

from qppsearch.qpp import Permutation, Qpp, permutation_of
from qppsearch.turbo import code_rate, rsc_encode, turbo_encode


def reference_rsc(info):
    """Independent bit-level model of the constituent encoder, written from
    the tap equations with explicit named registers."""
    s1 = s2 = s3 = 0
    parity = []
    for u in info:
        a = u ^ s2 ^ s3
        parity.append(a ^ s1 ^ s3)
        s1, s2, s3 = a, s1, s2
    tail_in, tail_par = [], []
    for _ in range(3):
        u = s2 ^ s3
        a = u ^ s2 ^ s3
        tail_in.append(u)
        tail_par.append(a ^ s1 ^ s3)
        s1, s2, s3 = a, s1, s2
    assert (s1, s2, s3) == (0, 0, 0)
    return parity, tail_in, tail_par


class TestRsc:
    def test_impulse_response(self):
        info = np.zeros(20, dtype=int)
        info[0] = 1
        parity, _, _, _ = rsc_encode(info, terminate=False)
        assert parity[:7].tolist() == [1, 1, 1, 1, 0, 0, 1]
        # recursive encoder: the single 1 keeps the register cycling, period 7
        assert parity[:14].tolist() == parity[:7].tolist() * 2

    def test_all_zero(self):
        parity, ti, tp, s = rsc_encode(np.zeros(16, dtype=int), terminate=True)
        assert not parity.any() and not ti.any() and not tp.any() and s == 0

    def test_termination_reaches_zero(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            _, _, _, s = rsc_encode(rng.integers(0, 2, 33), terminate=True)
            assert s == 0

    def test_matches_reference_model(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            info = rng.integers(0, 2, 24)
            parity, ti, tp, _ = rsc_encode(info, terminate=True)
            ref_par, ref_ti, ref_tp = reference_rsc(info.tolist())
            assert parity.tolist() == ref_par
            assert ti.tolist() == ref_ti and tp.tolist() == ref_tp


class TestTurboEncode:
    def test_codeword_length(self):
        perm = permutation_of(Qpp(40, 3, 10))
        cw = turbo_encode(np.zeros(40, dtype=int), perm)
        assert len(cw) == 132 and cw.bits.size == 132

    def test_all_zero_weight(self):
        perm = permutation_of(Qpp(40, 3, 10))
        cw = turbo_encode(np.zeros(40, dtype=int), perm)
        assert cw.total_weight == 0 and cw.info_weight == 0

    def test_length_mismatch(self):
        perm = permutation_of(Qpp(40, 3, 10))
        with pytest.raises(ValueError):
            turbo_encode(np.zeros(39, dtype=int), perm)

    def test_gf2_linearity(self):
        perm = permutation_of(Qpp(16, 1, 4))
        rng = np.random.default_rng(2)
        for _ in range(30):
            u = rng.integers(0, 2, 16)
            v = rng.integers(0, 2, 16)
            cu = turbo_encode(u, perm).bits
            cv = turbo_encode(v, perm).bits
            cuv = turbo_encode(u ^ v, perm).bits
            assert np.array_equal(cuv, cu ^ cv)

    def test_interleaver_direction(self):
        # second-encoder input at step x is info[perm[x]]
        perm = permutation_of(Qpp(16, 1, 4))
        rng = np.random.default_rng(3)
        info = rng.integers(0, 2, 16)
        cw = turbo_encode(info, perm)
        par2, _, _, _ = rsc_encode(info[perm.table], terminate=True)
        assert np.array_equal(cw.parity2, par2)

    def test_weight_bookkeeping(self):
        perm = permutation_of(Qpp(16, 1, 4))
        rng = np.random.default_rng(4)
        info = rng.integers(0, 2, 16)
        cw = turbo_encode(info, perm)
        assert cw.total_weight == int(cw.bits.sum())
        assert cw.info_weight == int(info.sum())
        assert cw.total_weight >= cw.info_weight


class TestCodeRate:
    def test_examples(self):
        assert code_rate(40) == Fraction(40, 132)
        assert code_rate(1008) == Fraction(1008, 3036)
        assert abs(float(code_rate(40)) - 0.30303) < 1e-4
        assert abs(float(code_rate(1008)) - 0.33202) < 1e-4

    def test_asymptote(self):
        assert abs(float(code_rate(10**9)) - 1 / 3) < 1e-8

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            code_rate(0)
