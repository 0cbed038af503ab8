"""Exact inclusion-exclusion count of non-primes sigma(x) and primes pi(x).

sigma(x) counts every non-prime <= x, the number 1 included, so that
x = sigma(x) + pi(x). With p_1 < ... < p_i0 the primes up to floor(sqrt(x)),

    sigma(x) = 1 + sum_i ( -1 + sum_j (-1)^j sum_k floor(x / (p_i * C_jk)) )

where C_jk runs over the products of j distinct primes taken from
p_1 .. p_{i-1} (C = 1 for j = 0). The inner double sum is evaluated depth
first with running quotients: floor(floor(x / a) / b) == floor(x / (a*b)),
so no product is ever formed and a branch stops as soon as the next prime
exceeds the running quotient (all deeper terms are then zero).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np
from numba import njit

from .errors import DomainError, RangeTooLargeError
from .sieve_oracle import small_primes

EXACT_LIMIT = 10**7


@dataclass(frozen=True)
class PrimeBasis:
    """The primes p_1..p_i0 needed to count up to x."""

    x: int
    primes: tuple[int, ...]

    @property
    def i0(self) -> int:
        return len(self.primes)

    @property
    def primorial(self) -> int:
        return math.prod(self.primes)


def prime_basis(x: int) -> PrimeBasis:
    return PrimeBasis(x, tuple(small_primes(math.isqrt(x)).tolist()))


@dataclass(frozen=True)
class CombinationTerm:
    """One summand (-1)^j floor(x / (p_i * C)) of the count."""

    i: int
    j: int
    product: int
    sign: int
    value: int


@njit(cache=True)
def _outer_term(y, primes, a, stack_y, stack_a, stack_s):
    """sum over subsets S of primes[:a] of (-1)^|S| floor(y / prod(S)), pruned."""
    total = 0
    top = 0
    stack_y[0] = y
    stack_a[0] = a
    stack_s[0] = 1
    top = 1
    while top > 0:
        top -= 1
        q = stack_y[top]
        lim = stack_a[top]
        s = stack_s[top]
        total += s * q
        for k in range(lim):
            p = primes[k]
            if p > q:
                break
            stack_y[top] = q // p
            stack_a[top] = k
            stack_s[top] = -s
            top += 1
    return total


@njit(cache=True)
def _sigma_kernel(x, primes, i0):
    n = primes.shape[0]
    size = 64 * (n + 1) + 64
    stack_y = np.empty(size, dtype=np.int64)
    stack_a = np.empty(size, dtype=np.int64)
    stack_s = np.empty(size, dtype=np.int64)
    total = 1
    for i in range(i0):
        total += -1 + _outer_term(x // primes[i], primes, i, stack_y, stack_a, stack_s)
    return total


@njit(cache=True)
def _sigma_many_kernel(xs, primes):
    out = np.empty(xs.shape[0], dtype=np.int64)
    n = primes.shape[0]
    size = 64 * (n + 1) + 64
    stack_y = np.empty(size, dtype=np.int64)
    stack_a = np.empty(size, dtype=np.int64)
    stack_s = np.empty(size, dtype=np.int64)
    for t in range(xs.shape[0]):
        x = xs[t]
        r = np.int64(math.sqrt(x))
        while r * r > x:
            r -= 1
        while (r + 1) * (r + 1) <= x:
            r += 1
        i0 = np.searchsorted(primes, r, side="right")
        total = 1
        for i in range(i0):
            total += -1 + _outer_term(x // primes[i], primes, i, stack_y, stack_a, stack_s)
        out[t] = total
    return out


def _check_x(x: int, limit: int | None) -> None:
    if x < 1:
        raise DomainError("x must be >= 1")
    if limit is not None and x > limit:
        raise RangeTooLargeError(
            f"x={x} exceeds the exact-count limit {limit}; use the sieve oracle instead"
        )


def _unpruned_sigma(x: int, basis: Sequence[int]) -> int:
    """Every subset enumerated, no pruning. Exponential; test oracle only."""
    total = 1
    for i, p in enumerate(basis):
        inner = 0
        for j in range(i + 1):
            for combo in combinations(basis[:i], j):
                inner += (-1) ** j * (x // (p * math.prod(combo)))
        total += -1 + inner
    return total


def sigma_exact(
    x: int,
    *,
    basis: Sequence[int] | None = None,
    prune: bool = True,
    limit: int | None = EXACT_LIMIT,
) -> int:
    """Number of non-primes <= x, 1 included.

    ``basis`` may extend the default prime basis with further consecutive
    primes, all <= x; the extra outer terms vanish. ``prune=False`` walks
    every subset and is only usable for small bases.
    """
    _check_x(x, limit)
    if basis is None:
        primes = small_primes(math.isqrt(x))
    else:
        primes = np.asarray(basis, dtype=np.int64)
        default = small_primes(math.isqrt(x))
        if len(primes) < len(default) or not np.array_equal(primes[: len(default)], default):
            raise DomainError("basis must start with every prime <= sqrt(x)")
        if len(primes) and primes[-1] > x:
            raise DomainError("basis primes must not exceed x")
    if not prune:
        return _unpruned_sigma(x, primes.tolist())
    return int(_sigma_kernel(np.int64(x), primes, len(primes)))


def sigma_exact_many(xs: Sequence[int] | np.ndarray, *, limit: int | None = EXACT_LIMIT) -> np.ndarray:
    """sigma_exact for many x in one compiled loop."""
    arr = np.asarray(xs, dtype=np.int64)
    if arr.size == 0:
        return arr
    _check_x(int(arr.min()), None)
    _check_x(int(arr.max()), limit)
    primes = small_primes(math.isqrt(int(arr.max())))
    return _sigma_many_kernel(arr, primes)


def pi_exact(x: int, *, limit: int | None = EXACT_LIMIT) -> int:
    return x - sigma_exact(x, limit=limit)


def pi_exact_many(xs: Sequence[int] | np.ndarray, *, limit: int | None = EXACT_LIMIT) -> np.ndarray:
    arr = np.asarray(xs, dtype=np.int64)
    return arr - sigma_exact_many(arr, limit=limit)


def combination_terms(x: int) -> Iterator[CombinationTerm]:
    """Non-zero summands of sigma(x) in depth-first order, prime indices ascending."""
    _check_x(x, EXACT_LIMIT)
    basis = prime_basis(x).primes

    def walk(i: int, start: int, j: int, product: int) -> Iterator[CombinationTerm]:
        value = x // (basis[i - 1] * product)
        yield CombinationTerm(i, j, basis[i - 1] * product, (-1) ** j, value)
        for k in range(start, i - 1):
            if basis[i - 1] * product * basis[k] > x:
                break
            yield from walk(i, k + 1, j + 1, product * basis[k])

    for i in range(1, len(basis) + 1):
        yield from walk(i, 0, 0, 1)


def outer_terms(x: int) -> list[int]:
    """Per-prime contributions s_i = -1 + sum_j (-1)^j sum_k floor(x/(p_i C)); sigma = 1 + sum."""
    by_i: dict[int, int] = {}
    for term in combination_terms(x):
        by_i[term.i] = by_i.get(term.i, -1) + term.sign * term.value
    return [by_i[i] for i in sorted(by_i)]


@dataclass(frozen=True)
class DeltaVerdict:
    two_n: int
    sigma_2n: int
    sigma_2n1: int
    sigma_2n3: int

    @property
    def delta(self) -> int:
        return self.sigma_2n1 - self.sigma_2n

    @property
    def delta2(self) -> int:
        return self.sigma_2n3 - self.sigma_2n1

    @property
    def first_prime(self) -> bool:
        return self.delta == 0

    @property
    def second_prime(self) -> bool:
        # 2n+2 is always composite and accounts for one unit of delta2
        return self.delta2 == 1

    @property
    def twin(self) -> tuple[int, int] | None:
        if self.first_prime and self.second_prime:
            return (self.two_n + 1, self.two_n + 3)
        return None


def delta_classify(two_n: int) -> DeltaVerdict:
    """Decide primality of 2n+1 and 2n+3 from differences of sigma."""
    if two_n % 2:
        raise DomainError(f"{two_n} is odd")
    if two_n < 4:
        raise DomainError("2n must be >= 4")
    s = sigma_exact_many([two_n, two_n + 1, two_n + 3])
    return DeltaVerdict(two_n, int(s[0]), int(s[1]), int(s[2]))


def sigma_interval_exact(n: int) -> int:
    """Non-primes in the quadratic interval (n^2, (n+1)^2]."""
    if n < 1:
        raise DomainError("n must be >= 1")
    hi, lo = sigma_exact_many([(n + 1) ** 2, n * n])
    return int(hi - lo)


def combination_reciprocal_sum(i: int, *, alternating: bool = True) -> Fraction:
    """sum over j, k of (+-1)^j / C_{j,i-1,k}, exactly."""
    if i < 1:
        raise DomainError("i must be >= 1")
    primes = small_primes(2 * i * max(2, i.bit_length()) + 16).tolist()[: i - 1]
    if len(primes) < i - 1:
        raise DomainError("prime table too short")
    total = Fraction(0)
    for j in range(i):
        sign = (-1) ** j if alternating else 1
        for combo in combinations(primes, j):
            total += Fraction(sign, math.prod(combo))
    return total


def euler_product(i: int, *, alternating: bool = True) -> Fraction:
    """prod_{j < i} (1 -+ 1/p_j), exactly."""
    primes = small_primes(2 * i * max(2, i.bit_length()) + 16).tolist()[: i - 1]
    out = Fraction(1)
    for p in primes:
        out *= 1 - Fraction(1, p) if alternating else 1 + Fraction(1, p)
    return out
