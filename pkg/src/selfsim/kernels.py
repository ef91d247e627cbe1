"""Exact combinatorial kernels.

Everything here works on :class:`fractions.Fraction` (ints are accepted and
promoted).  No floating point is used anywhere in this module.

The coefficient triangle ``A_i^j(a)`` expresses the j-th derivative of
``v(x * y**a)`` with respect to ``y`` through the Euler-type terms
``t**k D_t**k v``::

    D_y^j v = y^(-j) * sum_{k=1..j} A_{k-1}^j(a) t^k D_t^k v

Two routes compute it: :func:`a_coeff` (three-term recurrence, memoized,
the production path) and :func:`a_coeff_oracle` (brute-force nested sum over
decreasing index chains, test-only).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, Tuple, Union

RationalLike = Union[int, Fraction]

__all__ = [
    "ACoeffTable",
    "a_coeff",
    "a_coeff_oracle",
    "binomial",
    "falling_factorial",
    "pochhammer",
    "to_fraction",
]


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions, and ``"n/d"`` or decimal strings exactly.

    Floats are rejected: their binary expansion is rarely what was meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} exactly to Fraction")


def falling_factorial(a: RationalLike, n: int) -> Fraction:
    """Return ``a (a-1) ... (a-n+1)``; the empty product (n = 0) is 1.

    >>> falling_factorial(Fraction(-1, 3), 2)
    Fraction(4, 9)
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    a = Fraction(a)
    out = Fraction(1)
    for k in range(n):
        out *= a - k
        if not out:
            break
    return out


def pochhammer(a: RationalLike, n: int) -> Fraction:
    """Rising factorial ``(a)_n = a (a+1) ... (a+n-1)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a = Fraction(a)
    out = Fraction(1)
    for k in range(n):
        out *= a + k
        if not out:
            break
    return out


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError(f"binomial({n}, {k}): arguments must be non-negative")
    if k > n:
        raise ValueError(f"binomial({n}, {k}): k > n")
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# A_i^j(a) triangle
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _triangle_row(a: Fraction, j: int) -> Tuple[Fraction, ...]:
    # row j holds A_0^j .. A_{j-1}^j; lru_cache is internally locked
    if j == 1:
        return (a,)
    prev = _triangle_row(a, j - 1)
    row = []
    for i in range(j):
        same = prev[i] if i < j - 1 else Fraction(0)
        lower = prev[i - 1] if i >= 1 else Fraction(0)
        row.append(a * ((i + 1) * same + lower) - (j - 1) * same)
    return tuple(row)


def a_coeff(i: int, j: int, a: RationalLike) -> Fraction:
    """Value of ``A_i^j(a)`` from the three-term recurrence.

    ``A_i^j = a((i+1) A_i^{j-1} + A_{i-1}^{j-1}) - (j-1) A_i^{j-1}`` with
    ``A_0^1 = a``, ``A_{-1}^j = 0`` and ``A_i^j = 0`` for ``i >= j``.
    Rows are memoized per distinct ``a``.
    """
    if i < 0 or j < 1:
        raise ValueError("need i >= 0 and j >= 1")
    if i >= j:
        return Fraction(0)
    return _triangle_row(Fraction(a), j)[i]


def a_coeff_oracle(i: int, j: int, a: RationalLike) -> Fraction:
    """Brute-force ``A_i^j(a)`` by enumerating every decreasing index chain.

    Sums, over chains ``j = k_0 > k_1 > ... > k_i >= 1``, the product::

        (a)falling_{k_i} * prod_{s=1..i} C(k_{s-1} - 1, k_s) (a)falling_{k_{s-1} - k_s}

    For ``i = 0`` the chain is just ``(j,)`` and the value is ``(a)falling_j``.
    Cost grows like ``C(j-1, i)``; test use only.
    """
    if i < 0 or j < 1:
        raise ValueError("need i >= 0 and j >= 1")
    if i >= j:
        return Fraction(0)
    a = Fraction(a)
    total = Fraction(0)
    for inner in combinations(range(j - 1, 0, -1), i):
        chain = (j,) + inner
        term = falling_factorial(a, chain[-1])
        for s in range(1, len(chain)):
            prev, cur = chain[s - 1], chain[s]
            term *= binomial(prev - 1, cur) * falling_factorial(a, prev - cur)
        total += term
    return total


@dataclass(frozen=True)
class ACoeffTable:
    """Dense snapshot of the triangle ``A_i^j(a)`` for ``1 <= j <= max_j``."""

    a: Fraction
    max_j: int
    entries: Dict[Tuple[int, int], Fraction]

    @classmethod
    def build(cls, a: RationalLike, max_j: int) -> "ACoeffTable":
        a = Fraction(a)
        entries = {}
        for j in range(1, max_j + 1):
            for i, value in enumerate(_triangle_row(a, j)):
                entries[(i, j)] = value
        return cls(a=a, max_j=max_j, entries=entries)

    def __call__(self, i: int, j: int) -> Fraction:
        if j < 1 or j > self.max_j:
            raise KeyError(f"j={j} outside 1..{self.max_j}")
        if i < 0:
            raise KeyError(f"i={i} negative")
        return self.entries.get((i, j), Fraction(0))
