"""Closed-form density laws and scatter bands over quadratic intervals.

All laws share the interval density W = A' / (2 ln(n+1)) for (n^2, (n+1)^2],
i.e. the largest basis prime p_i0 = prec(n+1) is approximated by n+1 unless
``ModelParams.exact_prec`` is set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

from .errors import DomainError
from .sieve_oracle import prec, small_primes

DEFAULT_A_PRIME = 1.06
LN3 = math.log(3)

BandVariant = Literal["printed", "squared"]
PrimeMode = Literal["unit", "fit"]


@dataclass(frozen=True)
class ModelParams:
    """Model constant and variant switches.

    ``a_doubleprime_mode='unit'`` pins A'' = 1, hence A' = ln 3; ``'fit'``
    uses ``a_prime`` as given (1.06 by default).
    """

    a_prime: float = DEFAULT_A_PRIME
    band_variant: BandVariant = "squared"
    a_doubleprime_mode: PrimeMode = "fit"
    exact_prec: bool = False

    def __post_init__(self) -> None:
        if not self.a_prime > 0:
            raise DomainError("a_prime must be positive")
        if self.band_variant not in ("printed", "squared"):
            raise DomainError(f"unknown band variant {self.band_variant!r}")
        if self.a_doubleprime_mode not in ("unit", "fit"):
            raise DomainError(f"unknown mode {self.a_doubleprime_mode!r}")

    @property
    def effective_a_prime(self) -> float:
        return LN3 if self.a_doubleprime_mode == "unit" else self.a_prime

    def with_(self, **changes) -> "ModelParams":
        return replace(self, **changes)

    def header(self) -> dict[str, object]:
        return {
            "a_prime": self.effective_a_prime,
            "band": self.band_variant,
            "mode": self.a_doubleprime_mode,
            "exact_prec": self.exact_prec,
        }


DEFAULT_PARAMS = ModelParams()


@dataclass(frozen=True)
class BandedPrediction:
    n: int
    mean: float
    upper: float
    lower: float


def _log_scale(n: int, params: ModelParams) -> float:
    if n < 1:
        raise DomainError("n must be >= 1 (ln(n+1) vanishes at n = 0)")
    if params.exact_prec:
        return math.log(prec(n + 1))
    return math.log(n + 1)


def interval_width(n: int) -> int:
    return 2 * n + 1


def biquadratic_width(n: int) -> int:
    return 4 * n**3 + 6 * n**2 + 4 * n + 1


def density(n: int, params: ModelParams = DEFAULT_PARAMS) -> float:
    """Prime density W in the n-th quadratic interval."""
    return params.effective_a_prime / (2 * _log_scale(n, params))


def _band_factor(n: int, params: ModelParams) -> float:
    # A'/ln(n+1) == 2W
    return 2 * density(n, params)


def mean_spacing(n: int, params: ModelParams = DEFAULT_PARAMS) -> float:
    """1/W: average room taken by one prime."""
    return 1 / density(n, params)


def pair_spacing(n: int, params: ModelParams = DEFAULT_PARAMS) -> float:
    """Half the room taken by a pair of primes, 1/(2 W^2) = 2 ln^2(n+1) / A'^2."""
    return 1 / (2 * density(n, params) ** 2)


def scatter_width(n: int, params: ModelParams = DEFAULT_PARAMS) -> float:
    """b_n / pair_spacing = 2 b_n W^2."""
    return interval_width(n) / pair_spacing(n, params)


def pi_model_product(n: int) -> float:
    """(2n+1) * prod_{p <= prec(n+1)} (1 - 1/p)."""
    return interval_width(n) * mertens_product(n + 1)


def mertens_product(limit: int) -> float:
    """prod (1 - 1/p) over primes p <= limit (1 for an empty product)."""
    out = 1.0
    for p in small_primes(limit).tolist():
        out *= 1 - 1 / p
    return out


def pi_model_sum_form(n: int) -> float:
    """(2n+1) * (1 - sum_i p_i^-1 prod_{j<i} (1 - 1/p_j)), before telescoping."""
    acc = 0.0
    running = 1.0
    for p in small_primes(n + 1).tolist():
        acc += running / p
        running *= 1 - 1 / p
    return interval_width(n) * (1 - acc)


def pi_model_cumulative(n0: int, *, basis: Literal["upper", "lower"] = "lower") -> int:
    """Sum of floored per-interval values over n = 0..n0.

    ``basis='lower'`` takes the product over primes <= prec(n) (empty basis,
    hence no contribution, for n < 2); ``'upper'`` uses primes <= prec(n+1)
    from n = 1 on, as in :func:`pi_model_product`.
    """
    if n0 < 1:
        raise DomainError("n0 must be >= 1")
    total = 0
    for n in range(0, n0 + 1):
        if basis == "lower":
            if n < 2:
                continue
            value = interval_width(n) * mertens_product(n)
        elif basis == "upper":
            if n < 1:
                continue
            value = pi_model_product(n)
        else:
            raise DomainError(f"unknown basis {basis!r}")
        total += math.floor(value)
    return total


def prime_band(n: int, params: ModelParams = DEFAULT_PARAMS) -> BandedPrediction:
    """Mean A'(n+1/2)/ln(n+1) with band mean * (1 +- A'/ln(n+1))."""
    mean = interval_width(n) * density(n, params)
    f = _band_factor(n, params)
    return BandedPrediction(n, mean, mean * (1 + f), mean * (1 - f))


def initial_interval_model(n: int, params: ModelParams = DEFAULT_PARAMS) -> float:
    """Prime-number-theorem count for [0, 2n+1], about twice the interval mean."""
    return params.effective_a_prime * interval_width(n) / _log_scale(n, params)


def twin_mean(n: int, params: ModelParams = DEFAULT_PARAMS) -> float:
    return interval_width(n) * density(n, params) ** 2


def twin_model(n: int, params: ModelParams = DEFAULT_PARAMS) -> BandedPrediction:
    """Twin count (2n+1) W^2 with its scatter band.

    ``squared``: mean * (1 +- f)^2; ``printed``: mean * (1 + 2f^2 +- 4f),
    with f = A'/ln(n+1).
    """
    mean = twin_mean(n, params)
    f = _band_factor(n, params)
    if params.band_variant == "squared":
        upper, lower = mean * (1 + f) ** 2, mean * (1 - f) ** 2
    else:
        upper, lower = mean * (1 + 2 * f * f + 4 * f), mean * (1 + 2 * f * f - 4 * f)
    return BandedPrediction(n, mean, upper, lower)


def legacy_twin_band(n: int, a_prime: float = DEFAULT_A_PRIME) -> BandedPrediction:
    """Twin mean with the fixed 1.2 / 0.8 scatter factors, squared."""
    if n < 1:
        raise DomainError("n must be >= 1")
    base = (n + 0.5) / (2 * math.log(n + 1) ** 2)
    return BandedPrediction(n, base * a_prime**2, base * (1.2 * a_prime) ** 2, base * (0.8 * a_prime) ** 2)


def quad_model(n: int, params: ModelParams = DEFAULT_PARAMS) -> float:
    """Expected quadruplets in (n^4, (n+1)^4]: b_{4,n} W^4."""
    return biquadratic_width(n) * density(n, params) ** 4


def goldbach_interval(two_m: int) -> int:
    """n with n^2 < 2m <= (n+1)^2."""
    return math.isqrt(two_m - 1)


def goldbach_model(two_m: int, params: ModelParams = DEFAULT_PARAMS) -> BandedPrediction:
    """Twice the twin prediction of the quadratic interval holding 2m."""
    if two_m % 2:
        raise DomainError(f"{two_m} is odd")
    if two_m < 8:
        raise DomainError("2m must be >= 8")
    t = twin_model(goldbach_interval(two_m), params)
    return BandedPrediction(t.n, 2 * t.mean, 2 * t.upper, 2 * t.lower)


def max_gap_model(x: float, params: ModelParams = DEFAULT_PARAMS) -> float:
    """ln^2(x) / (2 A'^2)."""
    if x < 3:
        raise DomainError("x must be >= 3")
    return math.log(x) ** 2 / (2 * params.effective_a_prime**2)


@dataclass(frozen=True)
class MertensDiagnostic:
    i0: int
    largest_prime: int
    sum_reciprocal: float
    lnln_fit: float


def mertens_diagnostic(i0_limit: int) -> MertensDiagnostic:
    """sum of 1/p_j for j <= i0 and the constant c = sum - ln ln p_i0."""
    if i0_limit < 2:
        raise DomainError("i0_limit must be >= 2")
    bound = 64
    while True:
        primes = small_primes(bound)
        if len(primes) >= i0_limit:
            break
        bound *= 2
    primes = primes[:i0_limit]
    total = float((1.0 / primes.astype(float)).sum())
    largest = int(primes[-1])
    return MertensDiagnostic(i0_limit, largest, total, total - math.log(math.log(largest)))
