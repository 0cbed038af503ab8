"""Segmented sieve of Eratosthenes and the brute-force enumerators built on it.

Everything the distribution models predict (prime counts per quadratic
interval, twins, quadruplets, Goldbach multiplicities, maximal gaps) is
counted here directly from the sieve. Nothing in this module depends on the
models or on the inclusion-exclusion count.

Segments hold one flag per odd integer; 2 is special-cased. Flags are kept
bit-packed (``numpy.packbits``) inside :class:`PrimeSegment`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Literal

import numpy as np

from .errors import DomainError, RangeTooLargeError

DEFAULT_CEILING = 2**40
SEGMENT_ODDS = 2**20

# constellation offsets
TWIN = (0, 2)
QUADRUPLET = (0, 2, 6, 8)

IntervalKind = Literal["quadratic", "biquadratic"]

_ceiling = DEFAULT_CEILING


def set_default_ceiling(ceiling: int) -> None:
    """Change the range ceiling used when callers pass ``ceiling=None``."""
    global _ceiling
    if ceiling < 2:
        raise DomainError("ceiling must be at least 2")
    _ceiling = int(ceiling)


def get_default_ceiling() -> int:
    return _ceiling


def _check_ceiling(hi: int, ceiling: int | None) -> None:
    limit = _ceiling if ceiling is None else ceiling
    if hi > limit:
        raise RangeTooLargeError(f"range end {hi} exceeds ceiling {limit}")


@lru_cache(maxsize=8)
def _base_primes(limit: int) -> np.ndarray:
    """All primes <= limit from a plain (unsegmented) sieve."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


def small_primes(limit: int) -> np.ndarray:
    """Primes <= limit. Cached by power-of-two buckets so sieving sweeps reuse them."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    bucket = 1 << max(8, (limit - 1).bit_length())
    base = _base_primes(bucket)
    return base[: np.searchsorted(base, limit, side="right")]


def _odd_flags(lo: int, hi: int) -> tuple[int, np.ndarray]:
    """Primality flags for the odd integers in [lo, hi). Returns (first_odd, flags)."""
    first = lo | 1
    count = max(0, (hi - first + 1) // 2)
    flags = np.ones(count, dtype=bool)
    if count == 0:
        return first, flags
    if first == 1:
        flags[0] = False
    for p in small_primes(math.isqrt(hi - 1))[1:].tolist():
        start = max(p * p, -(-first // p) * p)
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        flags[(start - first) // 2 :: p] = False
    return first, flags


@dataclass(frozen=True)
class PrimeSegment:
    """Bit-packed primality over the half-open range [lo, hi)."""

    lo: int
    hi: int
    bits: np.ndarray = field(repr=False)
    first_odd: int = field(repr=False)
    n_odd: int = field(repr=False)

    def __post_init__(self) -> None:
        if not 0 <= self.lo <= self.hi:
            raise DomainError(f"invalid segment [{self.lo}, {self.hi})")

    @property
    def has_two(self) -> bool:
        return self.lo <= 2 < self.hi

    def odd_flags(self) -> np.ndarray:
        return np.unpackbits(self.bits, count=self.n_odd).astype(bool)

    def primes(self) -> np.ndarray:
        odd = self.first_odd + 2 * np.flatnonzero(self.odd_flags()).astype(np.int64)
        if self.has_two:
            return np.concatenate([np.array([2], dtype=np.int64), odd])
        return odd

    def count(self) -> int:
        return int(np.unpackbits(self.bits, count=self.n_odd).sum()) + int(self.has_two)

    def is_prime(self, k: int) -> bool:
        if not self.lo <= k < self.hi:
            raise DomainError(f"{k} outside segment [{self.lo}, {self.hi})")
        if k % 2 == 0:
            return k == 2
        i = (k - self.first_odd) // 2
        return bool((self.bits[i >> 3] >> (7 - (i & 7))) & 1)

    def __contains__(self, k: int) -> bool:
        return self.lo <= k < self.hi and self.is_prime(k)


def sieve_range(lo: int, hi: int, *, ceiling: int | None = None) -> PrimeSegment:
    """Sieve [lo, hi) segment by segment and return the packed result."""
    if lo < 0 or hi < lo:
        raise DomainError(f"need 0 <= lo <= hi, got lo={lo}, hi={hi}")
    _check_ceiling(hi, ceiling)
    parts = [flags for _, flags in _iter_flag_segments(lo, hi)]
    flags = np.concatenate(parts) if parts else np.empty(0, dtype=bool)
    return PrimeSegment(lo, hi, np.packbits(flags), lo | 1, len(flags))


def _iter_flag_segments(lo: int, hi: int) -> Iterator[tuple[int, np.ndarray]]:
    span = 2 * SEGMENT_ODDS
    seg_lo = lo
    while seg_lo < hi:
        seg_hi = min(hi, seg_lo + span)
        yield _odd_flags(seg_lo, seg_hi)
        seg_lo = seg_hi


def iter_prime_blocks(lo: int, hi: int, *, ceiling: int | None = None) -> Iterator[np.ndarray]:
    """Yield the primes of [lo, hi) as ascending int64 arrays, one per segment."""
    if lo < 0 or hi < lo:
        raise DomainError(f"need 0 <= lo <= hi, got lo={lo}, hi={hi}")
    _check_ceiling(hi, ceiling)
    if lo <= 2 < hi:
        yield np.array([2], dtype=np.int64)
    for first, flags in _iter_flag_segments(lo, hi):
        yield first + 2 * np.flatnonzero(flags).astype(np.int64)


def primes_in(lo: int, hi: int, *, ceiling: int | None = None) -> np.ndarray:
    """All primes in [lo, hi) as one array."""
    blocks = list(iter_prime_blocks(lo, hi, ceiling=ceiling))
    return np.concatenate(blocks) if blocks else np.empty(0, dtype=np.int64)


def pi_oracle(x: int, *, ceiling: int | None = None) -> int:
    """Number of primes <= x."""
    if x < 0:
        raise DomainError("x must be non-negative")
    return sum(len(b) for b in iter_prime_blocks(0, int(x) + 1, ceiling=ceiling))


def prec(x: float) -> int:
    """Largest prime <= x."""
    k = math.floor(x)
    if k < 2:
        raise DomainError(f"no prime <= {x}")
    width = 64
    while True:
        lo = max(0, k + 1 - width)
        found = primes_in(lo, k + 1)
        if len(found):
            return int(found[-1])
        width *= 2


def prime_index(p: int) -> int:
    """1-based index i with p_i = p."""
    if p < 2 or not is_prime_trial(p):
        raise DomainError(f"{p} is not prime")
    return pi_oracle(p)


def is_prime_trial(k: int) -> bool:
    """Trial division. Independent of the sieve; used to re-verify witnesses."""
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    d = 3
    while d * d <= k:
        if k % d == 0:
            return False
        d += 2
    return True


def isqrt_array(a: np.ndarray) -> np.ndarray:
    """Exact floor square roots of a non-negative int64 array."""
    r = np.floor(np.sqrt(a.astype(np.float64))).astype(np.int64)
    r -= (r * r > a).astype(np.int64)
    r += ((r + 1) * (r + 1) <= a).astype(np.int64)
    return r


def pattern_starts(primes: np.ndarray, lo: int, hi: int, offsets: tuple[int, ...]) -> np.ndarray:
    """Primes p in ``primes`` with p + o prime for every offset.

    ``primes`` must be every prime of [lo, hi); candidates whose pattern
    reaches hi or beyond are dropped.
    """
    if len(primes) == 0:
        return primes
    flags = np.zeros(hi - lo, dtype=bool)
    flags[primes - lo] = True
    top = offsets[-1]
    cand = primes[primes + top < hi]
    keep = np.ones(len(cand), dtype=bool)
    for o in offsets[1:]:
        keep &= flags[cand + o - lo]
    return cand[keep]


# --- quadratic and biquadratic intervals -------------------------------------


@dataclass(frozen=True)
class QuadIntervalStats:
    """Observed counts in the left-open interval (lo, hi].

    Twins and quadruplets are attributed to the interval holding their
    smallest member. For twins (p, p+2) with p > 3 both members always share
    one quadratic interval; the convention only matters for {3, 5} around 4.
    """

    n: int
    kind: str
    lo: int
    hi: int
    prime_count: int
    twin_count: int
    quad_count: int

    @property
    def width(self) -> int:
        return self.hi - self.lo


def interval_bounds(n: int, kind: IntervalKind = "quadratic") -> tuple[int, int]:
    """(lo, hi) of the interval (lo, hi] with index n."""
    if n < 1:
        raise DomainError("interval index n must be >= 1")
    if kind == "quadratic":
        return n * n, (n + 1) ** 2
    if kind == "biquadratic":
        return n**4, (n + 1) ** 4
    raise DomainError(f"unknown interval kind {kind!r}")


def interval_stats(n: int, kind: IntervalKind = "quadratic", *, ceiling: int | None = None) -> QuadIntervalStats:
    lo, hi = interval_bounds(n, kind)
    _check_ceiling(hi + 1, ceiling)
    # look ahead by the widest constellation so patterns starting near hi resolve
    stop = hi + 1 + QUADRUPLET[-1]
    primes = primes_in(lo + 1, stop, ceiling=None)
    inside = primes[primes <= hi]
    twins = pattern_starts(primes, lo + 1, stop, TWIN)
    quads = pattern_starts(primes, lo + 1, stop, QUADRUPLET)
    return QuadIntervalStats(
        n=n,
        kind=kind,
        lo=lo,
        hi=hi,
        prime_count=len(inside),
        twin_count=int((twins <= hi).sum()),
        quad_count=int((quads <= hi).sum()),
    )


@dataclass
class IntervalCounts:
    """Per-interval observed counts for n in [n_min, n_max]; index with ``n - n_min``."""

    n_min: int
    n_max: int
    primes: np.ndarray
    twins: np.ndarray
    quads: np.ndarray

    def at(self, n: int) -> tuple[int, int, int]:
        i = n - self.n_min
        return int(self.primes[i]), int(self.twins[i]), int(self.quads[i])

    @property
    def ns(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)


def quadratic_interval_counts(n_max: int, n_min: int = 1, *, ceiling: int | None = None) -> IntervalCounts:
    """Stream the sieve once over (n_min^2, (n_max+1)^2] and bin by interval."""
    if n_min < 1 or n_max < n_min:
        raise DomainError("need 1 <= n_min <= n_max")
    start = n_min * n_min + 1
    stop = (n_max + 1) ** 2 + 1
    _check_ceiling(stop, ceiling)
    size = n_max - n_min + 1
    counts = {name: np.zeros(size, dtype=np.int64) for name in ("primes", "twins", "quads")}
    pad = QUADRUPLET[-1]
    span = 2 * SEGMENT_ODDS
    seg_lo = start
    while seg_lo < stop:
        seg_hi = min(stop, seg_lo + span)
        primes = primes_in(seg_lo, seg_hi + pad, ceiling=None)
        own = primes[primes < seg_hi]
        for name, found in (
            ("primes", own),
            ("twins", pattern_starts(primes, seg_lo, seg_hi + pad, TWIN)),
            ("quads", pattern_starts(primes, seg_lo, seg_hi + pad, QUADRUPLET)),
        ):
            found = found[found < seg_hi]
            if len(found):
                idx = isqrt_array(found - 1) - n_min
                counts[name] += np.bincount(idx, minlength=size)[:size]
        seg_lo = seg_hi
    return IntervalCounts(n_min, n_max, counts["primes"], counts["twins"], counts["quads"])


def constellations_up_to(x: int, offsets: tuple[int, ...] = QUADRUPLET) -> np.ndarray:
    """Starting primes of every constellation lying entirely in [2, x]."""
    primes = primes_in(0, x + 1)
    return pattern_starts(primes, 0, x + 1, offsets)


# --- Goldbach ----------------------------------------------------------------


@dataclass(frozen=True)
class GoldbachWitness:
    p: int
    q: int
    sum: int

    def verify(self) -> bool:
        return (
            self.p <= self.q
            and self.p + self.q == self.sum
            and self.p % 2 == 1
            and is_prime_trial(self.p)
            and is_prime_trial(self.q)
        )


def _check_even(two_m: int, minimum: int) -> None:
    if two_m % 2:
        raise DomainError(f"{two_m} is odd")
    if two_m < minimum:
        raise DomainError(f"{two_m} is below {minimum}")


def goldbach_count_oracle(two_m: int) -> tuple[int, list[GoldbachWitness]]:
    """Unordered decompositions two_m = p + q into odd primes, p <= q (p == q counted)."""
    _check_even(two_m, 6)
    primes = primes_in(0, two_m + 1)
    flags = np.zeros(two_m + 1, dtype=bool)
    flags[primes] = True
    small = primes[(primes >= 3) & (2 * primes <= two_m)]
    hits = small[flags[two_m - small]]
    witnesses = [GoldbachWitness(int(p), two_m - int(p), two_m) for p in hits]
    return len(witnesses), witnesses


def goldbach_counts(max_two_m: int, min_two_m: int = 6) -> dict[int, int]:
    """v_{2m} for every even 2m in [min_two_m, max_two_m]."""
    _check_even(min_two_m, 6)
    primes = primes_in(3, max_two_m + 1)
    flags = np.zeros(max_two_m + 1, dtype=bool)
    flags[primes] = True
    out = {}
    for two_m in range(min_two_m, max_two_m + 1, 2):
        small = primes[2 * primes <= two_m]
        out[two_m] = int(flags[two_m - small].sum())
    return out


def goldbach_failures(limit: int) -> list[int]:
    """Even 2m in [8, limit] with no odd-prime decomposition (expected: none)."""
    primes = primes_in(3, limit + 1)
    flags = np.zeros(limit + 1, dtype=bool)
    flags[primes] = True
    pending = np.arange(8, limit + 1, 2, dtype=np.int64)
    failures: list[int] = []
    for p in primes.tolist():
        if len(pending) == 0:
            break
        # sums below 2p can no longer be written with p <= q
        exhausted = pending < 2 * p
        failures.extend(pending[exhausted].tolist())
        pending = pending[~exhausted]
        pending = pending[~flags[pending - p]]
    failures.extend(pending.tolist())
    return sorted(failures)


# --- gaps --------------------------------------------------------------------


def _iter_consecutive_pairs(x: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    prev = None
    for block in iter_prime_blocks(0, x + 1):
        if len(block) == 0:
            continue
        seq = block if prev is None else np.concatenate([[prev], block])
        if len(seq) >= 2:
            yield seq[:-1], seq[1:]
        prev = int(block[-1])


def max_gap_up_to(x: int) -> tuple[int, int, int]:
    """(gap, lower, upper) of the first maximal gap between consecutive primes <= x."""
    if x < 3:
        raise DomainError("x must be >= 3")
    best = (0, 0, 0)
    for lower, upper in _iter_consecutive_pairs(x):
        gaps = upper - lower
        i = int(np.argmax(gaps))
        if gaps[i] > best[0]:
            best = (int(gaps[i]), int(lower[i]), int(upper[i]))
    return best


def gap_bound_check(x: int) -> list[tuple[int, int]]:
    """Consecutive primes p < q <= x with q - p >= 2*floor(sqrt(q))."""
    if x < 3:
        raise DomainError("x must be >= 3")
    bad: list[tuple[int, int]] = []
    for lower, upper in _iter_consecutive_pairs(x):
        mask = (upper - lower) >= 2 * isqrt_array(upper)
        bad.extend(zip(lower[mask].tolist(), upper[mask].tolist()))
    return bad


# --- untouchable numbers -----------------------------------------------------

_SMALL_UNTOUCHABLE_WITNESSES = {3: 4, 7: 8}


def untouchable_witness(z: int) -> int | None:
    """An x whose proper-divisor sum is z, or None when z = 5.

    For z > 8 this is x = p*q with distinct primes p + q = z - 1, so the
    proper divisors of x are 1, p and q.
    """
    if z % 2 == 0:
        raise DomainError(f"{z} is even")
    if z < 3:
        raise DomainError("z must be >= 3")
    if z in _SMALL_UNTOUCHABLE_WITNESSES:
        return _SMALL_UNTOUCHABLE_WITNESSES[z]
    if z == 5:
        return None
    two_n = z - 1
    _, witnesses = goldbach_count_oracle(two_n)
    for w in witnesses:
        if w.p != w.q:
            return w.p * w.q
    return None
