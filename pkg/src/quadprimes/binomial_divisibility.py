"""Divisibility and congruence checks for numbers of the form 2^x +- 1.

Divisibility is decided with modular exponentiation wherever possible; exact
big-integer arithmetic is used only for identities (Fermat products,
cofactors) at small sizes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import DomainError, InvariantViolation, NotApplicableError
from .sieve_oracle import is_prime_trial, primes_in

Sign = Literal["plus", "minus"]
Clause = Literal["mod4_0", "prime_3mod4", "prime_1mod4", "mod4_2", "out_of_scope"]

FERMAT_INDEX_LIMIT = 30


@dataclass(frozen=True)
class BinomialForm:
    exponent: int
    sign: Sign

    def __post_init__(self) -> None:
        if self.exponent < 1:
            raise DomainError("exponent must be >= 1")
        if self.sign not in ("plus", "minus"):
            raise DomainError(f"unknown sign {self.sign!r}")

    @property
    def offset(self) -> int:
        return 1 if self.sign == "plus" else -1

    @property
    def value(self) -> int:
        return (1 << self.exponent) + self.offset

    def residue(self, modulus: int) -> int:
        return (pow(2, self.exponent, modulus) + self.offset) % modulus

    def divisible_by(self, d: int) -> bool:
        return self.residue(d) == 0


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InvariantViolation(message)


def mersenne(p: int) -> int:
    if p < 2:
        raise DomainError("p must be >= 2")
    return (1 << p) - 1


def fermat(i: int) -> int:
    if not 0 <= i <= FERMAT_INDEX_LIMIT:
        raise DomainError(f"Fermat index must lie in [0, {FERMAT_INDEX_LIMIT}]")
    return (1 << (1 << i)) + 1


def _odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime_trial(p):
        raise DomainError(f"{p} is not an odd prime")


@dataclass(frozen=True)
class Satz23Checks:
    p: int
    m: int
    minus_mod3: int
    plus_mod3: int


def satz23_congruences(p: int) -> Satz23Checks:
    """For an odd prime p: 2^p = 2(1 + pM), 2^p - 1 = 1 and 2^p + 1 = 0 mod 3."""
    _odd_prime(p)
    half = (1 << (p - 1)) - 1
    m, r = divmod(half, p)
    _require(r == 0, f"p={p} does not divide 2^(p-1) - 1")
    _require((1 << p) == 2 * (1 + p * m), "2^p != 2(1 + pM)")
    minus, plus = BinomialForm(p, "minus").residue(3), BinomialForm(p, "plus").residue(3)
    _require(minus == 1, f"2^{p} - 1 mod 3 != 1")
    _require(plus == 0, f"3 does not divide 2^{p} + 1")
    return Satz23Checks(p, m, minus, plus)


def satz24_divisor(p: int, m: int, sign: Sign) -> int:
    """Cofactor N with 2^(pm) -+ 1 = (2^p -+ 1) N, verified by exact division."""
    if sign == "minus":
        if p < 2 or not is_prime_trial(p):
            raise DomainError(f"{p} is not prime")
    elif sign == "plus":
        _odd_prime(p)
    else:
        raise DomainError(f"unknown sign {sign!r}")
    if m <= 1 or m % 2 == 0:
        raise DomainError("m must be odd and > 1")
    big = BinomialForm(p * m, sign).value
    small = BinomialForm(p, sign).value
    cofactor, r = divmod(big, small)
    _require(r == 0, f"2^{p} {sign} 1 does not divide 2^{p * m} {sign} 1")
    _require(cofactor > 1, "trivial cofactor")
    return cofactor


@dataclass(frozen=True)
class ProductReport:
    """Individual versus joint divisibility of 2^m' +- 1 by (2^p_i +- 1)."""

    exponent: int
    sign: Sign
    factors: dict[int, bool]
    joint_product: int
    joint_divides: bool


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def binomial_product_report(m_prime: int, sign: Sign) -> ProductReport:
    """Check each (2^p_i +- 1) | 2^m' +- 1 separately, then their product."""
    if m_prime < 3 or m_prime % 2 == 0:
        raise DomainError("m' must be odd and >= 3")
    target = BinomialForm(m_prime, sign)
    factors = {p: target.divisible_by(BinomialForm(p, sign).value) for p in prime_factors(m_prime)}
    joint = math.prod(BinomialForm(p, sign).value for p in factors)
    return ProductReport(m_prime, sign, factors, joint, target.divisible_by(joint))


@dataclass(frozen=True)
class Satz25Report:
    m: int
    i: int
    fermat_divisors: tuple[int, ...]
    mersenne_part_divides: bool
    cofactor: int
    three_divides_plus: bool


def satz25_structure(m: int, i: int) -> Satz25Report:
    """Factor structure of 2^(m 2^i) +- 1 for odd m.

    Verified: F_nu | 2^(m 2^i) - 1 for nu < i, (2^m - 1) | 2^(m 2^i) - 1,
    2^(m 2^i) + 1 = F_i M_i with M_i = 1 exactly when m = 1, and 3 | 2^m + 1.
    """
    if m < 1 or m % 2 == 0:
        raise DomainError("m must be odd and >= 1")
    if i < 1:
        raise DomainError("i must be >= 1")
    exponent = m << i
    minus = BinomialForm(exponent, "minus")
    nus = tuple(range(i))
    for nu in nus:
        _require(minus.divisible_by(fermat(nu)), f"F_{nu} does not divide 2^{exponent} - 1")
    mersenne_ok = minus.divisible_by(mersenne(m)) if m > 1 else True
    _require(mersenne_ok, f"2^{m} - 1 does not divide 2^{exponent} - 1")
    cofactor, r = divmod(BinomialForm(exponent, "plus").value, fermat(i))
    _require(r == 0, f"F_{i} does not divide 2^{exponent} + 1")
    _require((cofactor == 1) == (m == 1), "cofactor M_i is 1 iff m = 1")
    three = BinomialForm(m, "plus").divisible_by(3)
    _require(three, f"3 does not divide 2^{m} + 1")
    return Satz25Report(m, i, nus, mersenne_ok, cofactor, three)


def even_split(g: int) -> tuple[int, int]:
    """2^g - 1 = (2^(g/2) + 1)(2^(g/2) - 1) for even g; returns both factors."""
    if g < 2 or g % 2:
        raise DomainError("g must be even and >= 2")
    hi, lo = (1 << (g // 2)) + 1, (1 << (g // 2)) - 1
    _require(hi * lo == (1 << g) - 1, f"split of 2^{g} - 1 failed")
    return hi, lo


def fermat_coprime(i: int, j: int) -> bool:
    """gcd(F_i, F_j) == 1 and gcd(2^i - 1, 2^i + 1) == 1."""
    if not 0 <= j < i <= 14:
        raise DomainError("need 0 <= j < i <= 14")
    return math.gcd(fermat(i), fermat(j)) == 1 and math.gcd((1 << i) - 1, (1 << i) + 1) == 1


def fermat_product_identity(i: int) -> bool:
    """prod_{nu < i} F_nu == F_i - 2."""
    if not 1 <= i <= 12:
        raise DomainError("need 1 <= i <= 12")
    return math.prod(fermat(nu) for nu in range(i)) == fermat(i) - 2


@dataclass(frozen=True)
class DivisibilityVerdict:
    n: int
    p_prime: int
    clause: Clause
    divides_minus: bool
    divides_plus: bool
    absorbed_by: str | None = None


_CLAIMS: dict[str, str] = {
    "mod4_0": "minus",
    "prime_3mod4": "minus",
    "prime_1mod4": "plus",
    "mod4_2": "plus",
}


def classify_clause(n: int) -> Clause:
    r = n % 4
    if r == 0:
        return "mod4_0"
    if r == 2:
        return "mod4_2"
    if not is_prime_trial(n):
        return "out_of_scope"
    return "prime_3mod4" if r == 3 else "prime_1mod4"


def _absorbing_factor(n: int, p_prime: int, divides_minus: bool) -> str | None:
    """Whether p' already divides 2^p -+ 1 for the smallest prime p | n with n/p odd."""
    for p in prime_factors(n):
        if p == n:
            return None
        if divides_minus or (n // p) % 2 == 1:
            form = BinomialForm(p, "minus" if divides_minus else "plus")
            return "binomial_factor" if form.divisible_by(p_prime) else "cofactor"
    return None


def satz27_verdict(n: int) -> DivisibilityVerdict:
    """Which of 2^n -+ 1 the prime p' = 2n + 1 divides, checked against the claimed clause."""
    if n < 2:
        raise DomainError("n must be >= 2")
    p_prime = 2 * n + 1
    if p_prime <= 3 or not is_prime_trial(p_prime):
        raise NotApplicableError(f"2n+1 = {p_prime} is not a prime > 3")
    r = pow(2, n, p_prime)
    divides_minus, divides_plus = r == 1, r == p_prime - 1
    clause = classify_clause(n)
    claim = _CLAIMS.get(clause)
    if claim == "minus":
        _require(divides_minus, f"{p_prime} does not divide 2^{n} - 1")
    elif claim == "plus":
        _require(divides_plus, f"{p_prime} does not divide 2^{n} + 1")
    absorbed = None
    if divides_minus or divides_plus:
        absorbed = _absorbing_factor(n, p_prime, divides_minus)
    return DivisibilityVerdict(n, p_prime, clause, divides_minus, divides_plus, absorbed)


@dataclass
class SweepResult:
    limit: int
    checked: int
    out_of_scope: int
    violations: list[int]


def satz27_sweep(limit: int) -> SweepResult:
    """Check every 2 <= n <= limit with 2n+1 prime; collect the n whose clause fails."""
    candidates = primes_in(5, 2 * limit + 2).tolist()
    odd_primes = set(primes_in(3, limit + 1).tolist())
    checked = skipped = 0
    violations: list[int] = []
    for p_prime in candidates:
        n = (p_prime - 1) // 2
        if n % 2 and n not in odd_primes:
            skipped += 1
            continue
        r = n % 4
        claim = "minus" if r in (0, 3) else "plus"
        checked += 1
        if pow(2, n, p_prime) != (1 if claim == "minus" else p_prime - 1):
            violations.append(n)
    return SweepResult(limit, checked, skipped, violations)
