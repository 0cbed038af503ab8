"""Exception hierarchy shared by all quadprimes modules."""


class QuadPrimesError(Exception):
    """Base class for every error raised by this package."""


class RangeTooLargeError(QuadPrimesError, ValueError):
    """A requested range exceeds the configured sieve ceiling."""


class DomainError(QuadPrimesError, ValueError):
    """An argument lies outside the domain of the operation."""


class NotApplicableError(QuadPrimesError, ValueError):
    """The theorem being checked has no clause for this input."""


class InvariantViolation(QuadPrimesError, AssertionError):
    """A verified identity or congruence failed to hold."""
