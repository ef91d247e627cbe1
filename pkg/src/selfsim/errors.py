"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class SelfSimError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpecError(SelfSimError, ValueError):
    """An equation specification violates its kind's constraints."""


class DegenerateEquationError(InvalidSpecError):
    """The substitution exponent c vanishes (alpha == p for kinds 1 and 3)."""


class PoleInDenominatorParam(SelfSimError):
    """A lower hypergeometric parameter is a non-positive integer.

    ``collisions`` lists the ``(i, m)`` index pairs responsible.
    """

    def __init__(self, message: str, collisions=()):
        super().__init__(message)
        self.collisions = tuple(collisions)


class MaxTermsExceeded(SelfSimError):
    """Series summation hit ``max_terms`` before the tail bound met ``tol``."""

    def __init__(self, message: str, partial=None, bound_on_tail=None, terms_used=0):
        super().__init__(message)
        self.partial = partial
        self.bound_on_tail = bound_on_tail
        self.terms_used = terms_used


class PrecisionExhausted(SelfSimError):
    """Cancellation in a series needs more working digits than allowed."""

    def __init__(self, message: str, partial=None, dps=0):
        super().__init__(message)
        self.partial = partial
        self.dps = dps


class ZeroPivot(SelfSimError):
    """Resonance: the recurrence pivot vanishes at some n >= 1."""

    def __init__(self, message: str, i: int, n: int):
        super().__init__(message)
        self.i = i
        self.n = n


class FamilyError(SelfSimError):
    """One or more solution indices of a family could not be built."""

    def __init__(self, message: str, failures):
        super().__init__(message)
        self.failures = list(failures)
