"""Exact prime counting, quadratic-interval distribution laws and sieve oracles."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DomainError,
    InvariantViolation,
    NotApplicableError,
    QuadPrimesError,
    RangeTooLargeError,
)

__all__ = [
    "__version__",
    "DomainError",
    "InvariantViolation",
    "NotApplicableError",
    "QuadPrimesError",
    "RangeTooLargeError",
]
