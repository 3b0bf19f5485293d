import numpy as np
import pytest

from qppsearch.qpp import Permutation, Qpp, invert, is_valid, permutation_of
from qppsearch.spectrum import (
    BudgetExceeded,
    DistanceSpectrum,
    SpectrumTerm,
    brute_force_spectrum,
    exact_spectrum,
    record_codeword,
)


def spec_of(*triples, capacity=None):
    terms = tuple(SpectrumTerm(*t) for t in triples)
    return DistanceSpectrum(terms=terms, capacity=capacity or len(terms))


def random_qpps(L, count, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        q = Qpp(L, int(rng.integers(L)), int(rng.integers(1, L)))
        if is_valid(q):
            out.append(q)
    return out


class TestRecordCodeword:
    def test_insert_into_empty(self):
        s = record_codeword(spec_of(capacity=3), 11, 3)
        assert s.as_tuples() == [(11, 1, 3)]

    def test_accumulate_same_distance(self):
        s = record_codeword(spec_of((11, 1, 3), capacity=3), 11, 3)
        assert s.as_tuples() == [(11, 2, 6)]

    def test_displacement_at_capacity(self):
        s = record_codeword(spec_of((11, 1, 3), (12, 2, 4), capacity=2), 10, 1)
        assert s.as_tuples() == [(10, 1, 1), (11, 1, 3)]

    def test_ignores_beyond_capacity(self):
        base = spec_of((11, 1, 3), (12, 2, 4), capacity=2)
        assert record_codeword(base, 13, 1) == base

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            record_codeword(spec_of(capacity=1), 0, 1)


class TestBruteForce:
    def test_refuses_large_L(self):
        with pytest.raises(ValueError):
            brute_force_spectrum(Permutation(np.arange(21)), 1)

    def test_no_zero_distance(self):
        s = brute_force_spectrum(permutation_of(Qpp(8, 1, 2)), 36)
        assert all(t.d > 0 for t in s.terms)
        # every nonzero information word is tallied exactly once
        assert sum(t.N for t in s.terms) == 2**8 - 1

    def test_reducible_qpp_equals_matching_lpp(self):
        # 4x^2 == 4x mod 8, so 3x + 4x^2 collapses to the linear map 7x
        q = Qpp(8, 3, 4)
        lpp = Permutation(np.array([(7 * x) % 8 for x in range(8)]))
        assert permutation_of(q) == lpp
        assert brute_force_spectrum(permutation_of(q), 3) == brute_force_spectrum(lpp, 3)

    def test_inverse_permutation_same_spectrum(self):
        for q in random_qpps(16, 5, 7):
            p = permutation_of(q)
            assert (
                brute_force_spectrum(p, 5).as_tuples()
                == brute_force_spectrum(invert(p), 5).as_tuples()
            )


class TestExactSpectrum:
    def test_matches_oracle(self):
        for L in (8, 12, 16):
            for q in random_qpps(L, 6, L):
                p = permutation_of(q)
                for M in (1, 3, 5):
                    bf = brute_force_spectrum(p, M)
                    run = exact_spectrum(p, M)
                    assert not run.aborted and run.spectrum.complete
                    assert run.spectrum.as_tuples() == bf.as_tuples(), (q, M)

    def test_determinism(self):
        p = permutation_of(Qpp(16, 1, 4))
        a = exact_spectrum(p, 5)
        b = exact_spectrum(p, 5)
        assert a.spectrum == b.spectrum and a.nodes == b.nodes and a.updates == b.updates

    def test_event_stream_monotone(self):
        p = permutation_of(Qpp(16, 3, 4))
        snapshots = []
        run = exact_spectrum(p, 4, on_update=lambda ev: snapshots.append(ev.snapshot))
        assert snapshots, "expected at least one update event"
        for earlier, later in zip(snapshots, snapshots[1:]):
            assert later.terms[0].d <= earlier.terms[0].d
            earlier_n = {t.d: t.N for t in earlier.terms}
            for t in later.terms:
                if t.d in earlier_n:
                    assert t.N >= earlier_n[t.d]
        assert snapshots[-1].as_tuples() == run.spectrum.as_tuples()

    def test_abort_after_first_event(self):
        p = permutation_of(Qpp(16, 3, 4))
        seen = []

        def consumer(ev):
            seen.append(ev)
            return True

        run = exact_spectrum(p, 5, on_update=consumer)
        assert run.aborted and len(seen) == 1
        assert run.spectrum == seen[0].snapshot
        assert not run.spectrum.complete

    def test_abort_flag_only_when_requested(self):
        p = permutation_of(Qpp(16, 3, 4))
        run = exact_spectrum(p, 5, on_update=lambda ev: False)
        assert not run.aborted and run.spectrum.complete

    def test_node_budget(self):
        p = permutation_of(Qpp(40, 3, 10))
        with pytest.raises(BudgetExceeded):
            exact_spectrum(p, 9, node_budget=100)

    def test_ceiling_too_low_is_reported(self):
        p = permutation_of(Qpp(16, 1, 4))
        full = brute_force_spectrum(p, 3)
        with pytest.raises(BudgetExceeded):
            exact_spectrum(p, 3, weight_ceiling=full.terms[0].d)

    def test_table_head_L40(self):
        run = exact_spectrum(permutation_of(Qpp(40, 3, 10)), 1)
        assert run.spectrum.as_tuples() == [(11, 1, 3)]


class TestDistanceSpectrumType:
    def test_strictly_increasing_enforced(self):
        with pytest.raises(ValueError):
            spec_of((11, 1, 1), (11, 2, 2))

    def test_capacity_enforced(self):
        with pytest.raises(ValueError):
            DistanceSpectrum(terms=(SpectrumTerm(3, 1, 1), SpectrumTerm(4, 1, 1)), capacity=1)
