import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import consecutive_gaps, goldbach_pairs, is_prime, primes_below, proper_divisor_sum
from quadprimes import sieve_oracle as so
from quadprimes.errors import DomainError, RangeTooLargeError


def test_sieve_range_examples():
    assert so.sieve_range(0, 2).count() == 0
    assert so.sieve_range(0, 31).primes().tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert so.sieve_range(81, 101).primes().tolist() == [83, 89, 97]


def test_sieve_matches_trial_division():
    seg = so.sieve_range(0, 5000)
    assert seg.primes().tolist() == primes_below(5000)
    for k in (0, 1, 2, 3, 4, 4999, 4993):
        assert seg.is_prime(k) == is_prime(k)


def test_segment_membership_and_bounds():
    seg = so.sieve_range(100, 200)
    assert 101 in seg and 100 not in seg and 211 not in seg
    with pytest.raises(DomainError):
        seg.is_prime(99)


def test_ceiling_enforced():
    with pytest.raises(RangeTooLargeError):
        so.sieve_range(0, 1000, ceiling=500)
    with pytest.raises(RangeTooLargeError):
        so.pi_oracle(2**41)
    with pytest.raises(DomainError):
        so.sieve_range(10, 5)


def test_small_segments_compose(monkeypatch):
    monkeypatch.setattr(so, "SEGMENT_ODDS", 37)
    assert so.primes_in(0, 3000).tolist() == primes_below(3000)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=4000), max_size=6))
def test_segmentation_invariance(cuts):
    bounds = sorted({0, 4000, *cuts})
    pieces = [so.sieve_range(a, b).primes() for a, b in zip(bounds, bounds[1:])]
    assert np.concatenate(pieces).tolist() == so.sieve_range(0, 4000).primes().tolist()


def test_pi_oracle_examples():
    assert so.pi_oracle(1) == 0
    assert so.pi_oracle(122) == 30
    assert so.pi_oracle(168) == 39
    assert so.pi_oracle(10**6) == 78498


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=20000))
def test_pi_oracle_steps_by_zero_or_one(x):
    step = so.pi_oracle(x) - so.pi_oracle(x - 1)
    assert step == (1 if is_prime(x) else 0)


def test_prec():
    assert so.prec(2) == 2
    assert so.prec(122**0.5) == 11
    assert so.prime_index(so.prec(122**0.5)) == 5
    assert so.prec(10) == 7
    assert so.prec(10**6 + 0.5) == 999983
    with pytest.raises(DomainError):
        so.prec(1.99)


@pytest.mark.parametrize("x", [2, 2.5, 3, 17.9, 100, 1000.0, 7919])
def test_prec_ordering(x):
    p = so.prec(x)
    assert is_prime(p) and p <= int(x) <= x
    assert not any(is_prime(k) for k in range(p + 1, int(x) + 1))


def test_interval_stats_examples():
    s9 = so.interval_stats(9)
    assert (s9.prime_count, s9.twin_count) == (3, 0)
    s5 = so.interval_stats(5)
    assert (s5.prime_count, s5.twin_count) == (2, 1)
    s1 = so.interval_stats(1)
    assert s1.prime_count == 2 and s1.width == 3


def test_interval_stats_against_enumeration():
    for n in range(1, 60):
        lo, hi = n * n, (n + 1) ** 2
        inside = [k for k in range(lo + 1, hi + 1) if is_prime(k)]
        twins = [p for p in inside if is_prime(p + 2)]
        quads = [p for p in inside if all(is_prime(p + o) for o in (2, 6, 8))]
        s = so.interval_stats(n)
        assert (s.prime_count, s.twin_count, s.quad_count) == (len(inside), len(twins), len(quads))
        assert s.twin_count <= (s.prime_count + 1) // 2
        assert s.quad_count <= s.twin_count


def test_biquadratic_interval():
    s = so.interval_stats(2, "biquadratic")
    assert (s.lo, s.hi, s.width) == (16, 81, 65)
    assert so.interval_stats(1, "biquadratic").width == 15
    with pytest.raises(DomainError):
        so.interval_stats(0)


def test_bulk_counts_agree_with_single_intervals(monkeypatch):
    monkeypatch.setattr(so, "SEGMENT_ODDS", 101)
    counts = so.quadratic_interval_counts(120, 3)
    for n in (3, 4, 9, 10, 50, 77, 119, 120):
        s = so.interval_stats(n)
        assert counts.at(n) == (s.prime_count, s.twin_count, s.quad_count)


def test_every_interval_up_to_2000_has_two_primes():
    counts = so.quadratic_interval_counts(2000)
    assert counts.primes.min() >= 2


def test_twins_never_straddle_squares():
    primes = so.primes_in(0, 2_000_000)
    twins = so.pattern_starts(primes, 0, 2_000_000, so.TWIN)
    twins = twins[twins > 3]
    assert np.array_equal(so.isqrt_array(twins - 1), so.isqrt_array(twins + 1))


def test_isqrt_array_exact():
    values = np.array([0, 1, 3, 4, 15, 16, 17, 10**12 - 1, 10**12, 2**40 - 1], dtype=np.int64)
    assert so.isqrt_array(values).tolist() == [math.isqrt(int(v)) for v in values]


def test_goldbach_examples():
    count, witnesses = so.goldbach_count_oracle(10)
    assert count == 2
    assert [(w.p, w.q) for w in witnesses] == [(3, 7), (5, 5)]
    assert [(w.p, w.q) for w in so.goldbach_count_oracle(12)[1]] == [(5, 7)]
    assert so.goldbach_count_oracle(36)[0] == 4
    assert all(w.verify() for w in so.goldbach_count_oracle(1000)[1])


def test_goldbach_errors():
    with pytest.raises(DomainError):
        so.goldbach_count_oracle(11)
    with pytest.raises(DomainError):
        so.goldbach_count_oracle(4)


def test_goldbach_counts_agree_with_pairs():
    counts = so.goldbach_counts(400)
    for two_m, v in counts.items():
        assert v == len(goldbach_pairs(two_m))


def test_goldbach_failures_detects_missing_decompositions(monkeypatch):
    assert so.goldbach_failures(20000) == []
    real = so.primes_in

    def without_three(lo, hi, **kw):
        arr = real(lo, hi, **kw)
        return arr[arr != 3]

    monkeypatch.setattr(so, "primes_in", without_three)
    expected = [t for t in range(8, 41, 2) if not [pq for pq in goldbach_pairs(t) if pq[0] != 3]]
    assert expected == [8]
    assert so.goldbach_failures(40) == expected


def test_witness_verification_rejects_bad_pairs():
    assert not so.GoldbachWitness(3, 9, 12).verify()
    assert not so.GoldbachWitness(7, 5, 12).verify()
    assert so.GoldbachWitness(5, 7, 12).verify()


def test_max_gap_examples():
    assert so.max_gap_up_to(10) == (2, 3, 5)
    assert so.max_gap_up_to(100) == (8, 89, 97)
    assert so.max_gap_up_to(1000)[0] == 20


@pytest.mark.parametrize("x", [3, 50, 1000, 5000])
def test_max_gap_matches_enumeration(x):
    gaps = consecutive_gaps(x)
    best = max(g for g, _, _ in gaps)
    first = next(t for t in gaps if t[0] == best)
    assert so.max_gap_up_to(x) == first


def test_max_gap_across_segment_boundaries(monkeypatch):
    monkeypatch.setattr(so, "SEGMENT_ODDS", 5)
    assert so.max_gap_up_to(1000) == (20, 887, 907)


def test_gap_bound_check():
    assert so.gap_bound_check(3) == []
    assert so.gap_bound_check(100) == []
    assert so.gap_bound_check(10**6) == []


def test_untouchable_witness():
    assert so.untouchable_witness(5) is None
    assert so.untouchable_witness(3) == 4
    assert so.untouchable_witness(7) == 8
    assert so.untouchable_witness(9) == 15
    with pytest.raises(DomainError):
        so.untouchable_witness(10)


def test_untouchable_witnesses_have_the_right_divisor_sum():
    for z in range(3, 400, 2):
        x = so.untouchable_witness(z)
        if z == 5:
            assert x is None
            assert all(proper_divisor_sum(y) != 5 for y in range(1, 30))
        else:
            assert proper_divisor_sum(x) == z
