"""Generalized hypergeometric parameter lists and series evaluation.

For solution index ``i`` the family is ``qF_{p-1}`` with upper parameters
``i/c + (b - k)/(a c)`` (k < q), lower parameters ``(i - m)/c + 1``
(m < p, m != i) and argument ``K z`` where ``K = a^q / c^(p-q)``.  The
slot ``m = i`` equals 1 and is carried by the ``1/n!`` of the series; the
``factorial`` flag on :class:`HypergeomSpec` records whether that slot is
still present.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

import mpmath

from .errors import MaxTermsExceeded, PoleInDenominatorParam, PrecisionExhausted
from .similarity import EquationSpec, SimilarityParams

__all__ = [
    "ConvergenceClass",
    "EvalResult",
    "HypergeomSpec",
    "build_pfq",
    "convergence_class",
    "eval_pfq",
    "eval_pfq_exact",
    "pfq_terms_exact",
    "reduce_params",
]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_TERMS = 10_000
DEFAULT_MAX_DPS = 5_000
_BASE_DPS = 30


def _mpf(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


def _is_nonpositive_int(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


@dataclass(frozen=True)
class HypergeomSpec:
    num_params: Tuple[Fraction, ...]
    den_params: Tuple[Fraction, ...]
    scaleK: Fraction
    reduced: bool = False
    factorial: bool = True
    cancelled: Tuple[Fraction, ...] = ()

    @property
    def order(self) -> Tuple[int, int]:
        """``(upper, lower)`` in standard pFq notation.

        Without the ``1/n!`` the series equals a pFq with an extra upper 1.
        """
        return len(self.num_params) + (0 if self.factorial else 1), len(self.den_params)

    def lower_slots(self) -> Tuple[Fraction, ...]:
        """Lower parameters including the factorial's implicit 1."""
        return self.den_params + ((Fraction(1),) if self.factorial else ())


class ConvergenceClass(Enum):
    ENTIRE = "entire"


@dataclass(frozen=True)
class EvalResult:
    value: mpmath.mpf
    terms_used: int
    bound_on_tail: mpmath.mpf
    max_term: mpmath.mpf = mpmath.mpf(0)
    dps: int = _BASE_DPS


def build_pfq(spec: EquationSpec, params: SimilarityParams, i: int) -> HypergeomSpec:
    if not 0 <= i < spec.p:
        raise ValueError(f"solution index i={i} outside 0..{spec.p - 1}")
    a, b, c = params.a, params.b, params.c
    num = tuple(Fraction(i) / c + (b - k) / (a * c) for k in range(spec.q))
    den_with_index = [(m, Fraction(i - m) / c + 1) for m in range(spec.p) if m != i]
    poles = [
        (i, m) for m, d in den_with_index
        if _is_nonpositive_int(d) and d not in num
    ]
    if poles:
        raise PoleInDenominatorParam(
            f"lower parameter is a non-positive integer for (i, m) in {poles}",
            collisions=poles,
        )
    return HypergeomSpec(
        num_params=num,
        den_params=tuple(d for _, d in den_with_index),
        scaleK=params.scaleK,
    )


def reduce_params(h: HypergeomSpec) -> HypergeomSpec:
    """Cancel every value shared by the upper and lower parameter multisets.

    The implicit lower 1 of the factorial participates: an upper parameter
    equal to 1 cancels it and clears ``factorial``.
    """
    num = list(h.num_params)
    den = list(h.den_params)
    factorial = h.factorial
    cancelled = list(h.cancelled)
    for x in list(num):
        if x in den:
            den.remove(x)
            num.remove(x)
            cancelled.append(x)
    if factorial and 1 in num:
        num.remove(Fraction(1))
        factorial = False
        cancelled.append(Fraction(1))
    return replace(
        h,
        num_params=tuple(num),
        den_params=tuple(den),
        reduced=True,
        factorial=factorial,
        cancelled=tuple(cancelled),
    )


def convergence_class(h: HypergeomSpec) -> ConvergenceClass:
    upper, lower = h.order
    if upper > lower:
        raise AssertionError(
            f"upper parameter count {upper} exceeds lower count {lower}; "
            "the family cannot produce this"
        )
    return ConvergenceClass.ENTIRE


def _check_poles(h: HypergeomSpec):
    for d in h.den_params:
        # a terminating upper parameter no further from zero cuts the series first
        if _is_nonpositive_int(d) and not any(
            _is_nonpositive_int(x) and x >= d for x in h.num_params
        ):
            raise PoleInDenominatorParam(f"lower parameter {d} is a pole")


def _ratio_bound(h: HypergeomSpec, n: int, w_abs) -> Optional[mpmath.mpf]:
    """Upper bound on ``|t_{m+1}/t_m|`` valid for every ``m >= n``.

    Needs ``n + d > 0`` for every lower slot ``d``, so ``|d + m| = m + d``.
    Uppers are paired with lowers; a paired factor ``(m + |u|)/(m + d)`` never
    exceeds ``max(1, (n + |u|)/(n + d))`` and an unpaired ``1/(m + d)`` is
    decreasing, hence the product evaluated at ``n`` bounds every later ratio.
    """
    lowers = sorted(h.lower_slots())
    if lowers and n + lowers[0] <= 0:
        return None
    uppers = sorted((abs(x) for x in h.num_params), reverse=True)
    bound = mpmath.mpf(w_abs)
    for k, lo in enumerate(reversed(lowers)):
        denom = _mpf(n + lo)
        if k < len(uppers):
            bound *= max(mpmath.mpf(1), _mpf(n + uppers[k]) / denom)
        else:
            bound /= denom
    for up in uppers[len(lowers):]:
        bound *= _mpf(n + up)
    return bound


def _sum_series(h: HypergeomSpec, w, tol, max_terms, dps):
    with mpmath.workdps(dps):
        w = mpmath.mpf(w)
        nums = [_mpf(x) for x in h.num_params]
        dens = [_mpf(x) for x in h.den_params]
        term = mpmath.mpf(1)
        total = mpmath.mpf(1)
        max_term = mpmath.mpf(1)
        n = 0
        w_abs = abs(w)
        while True:
            if term == 0 or w == 0:
                return total, n + 1, mpmath.mpf(0), max_term
            ratio = w
            for x in nums:
                ratio *= x + n
            for x in dens:
                ratio /= x + n
            if h.factorial:
                ratio /= n + 1
            nxt = term * ratio
            if nxt == 0:
                return total, n + 1, mpmath.mpf(0), max_term
            bound = _ratio_bound(h, n + 1, w_abs)
            if bound is not None and bound <= 0.5:
                tail = 2 * abs(nxt)
                scale = abs(total) if total != 0 else mpmath.mpf(1)
                if tail <= tol * scale:
                    return total, n + 1, tail, max_term
            n += 1
            if n >= max_terms:
                raise MaxTermsExceeded(
                    f"no convergence within {max_terms} terms",
                    partial=total,
                    bound_on_tail=(2 * abs(nxt)) if bound is not None and bound <= 0.5 else mpmath.inf,
                    terms_used=n,
                )
            term = nxt
            total += term
            if abs(term) > max_term:
                max_term = abs(term)


def eval_pfq(
    h: HypergeomSpec,
    z,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    dps: Optional[int] = None,
    max_dps: int = DEFAULT_MAX_DPS,
) -> EvalResult:
    """Evaluate ``sum_n prod(num)_n / prod(den)_n (K z)^n [/ n!]``.

    Terms follow the ratio recurrence.  Summation runs in mpmath at a working
    precision that is raised until the digits lost to cancellation
    (``log10(max|term| / |sum|)``) leave at least ``-log10(tol)`` + 5 good ones.
    Stops once the tail bound ``2 |next term|`` (valid when every later term
    ratio is below 1/2) is under ``tol`` relative to the partial sum.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    _check_poles(h)
    K = h.scaleK
    with mpmath.workdps(max(dps or _BASE_DPS, _BASE_DPS)):
        w = _mpf(K) * (_mpf(z) if isinstance(z, Fraction) else mpmath.mpf(z))
    needed = int(math.ceil(-math.log10(tol))) + 5
    work = max(dps or _BASE_DPS, needed + 5)
    while True:
        total, used, tail, max_term = _sum_series(h, w, tol, max_terms, work)
        if total == 0:
            lost = work
        else:
            lost = max(0, int(mpmath.ceil(mpmath.log10(max_term / abs(total)))))
        if work - lost >= needed:
            return EvalResult(value=total, terms_used=used, bound_on_tail=tail,
                              max_term=max_term, dps=work)
        if work >= max_dps:
            raise PrecisionExhausted(
                f"cancellation needs more than {max_dps} digits (|K z| = {mpmath.nstr(abs(w), 5)})",
                partial=total, dps=work,
            )
        # a noise-dominated sum underestimates the loss, so grow at least geometrically
        work = min(max(needed + lost + 10, 2 * work), max_dps)


def pfq_terms_exact(h: HypergeomSpec, z: Fraction, n_terms: int):
    """First ``n_terms`` series terms as exact Fractions."""
    w = h.scaleK * Fraction(z)
    term = Fraction(1)
    out = [term]
    for n in range(n_terms - 1):
        ratio = w
        for x in h.num_params:
            ratio *= x + n
        for x in h.den_params:
            ratio /= x + n
        if h.factorial:
            ratio /= n + 1
        term = term * ratio
        out.append(term)
    return out


def eval_pfq_exact(h: HypergeomSpec, z: Fraction, n_terms: int) -> Fraction:
    """Exact truncated sum of the first ``n_terms`` terms."""
    return sum(pfq_terms_exact(h, z, n_terms), Fraction(0))
