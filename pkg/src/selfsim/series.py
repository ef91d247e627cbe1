"""The p self-similar solutions as explicit monomial series in (x, y).

Solution ``i`` is ``u_i = sum_n c_n x^(i + n c) y^(b + a (i + n c))`` with
``c_0 = 1`` and the exact recurrence::

    c_n (i + n c)falling_p = c_{n-1} (b + a (i + (n-1) c))falling_q

The same function is carried in hypergeometric form (for evaluation) and as
a ledger of :class:`MonomialTerm` (for exact verification).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Tuple

import mpmath

from .errors import FamilyError, ZeroPivot
from .hypergeom import DEFAULT_TOL, build_pfq, eval_pfq, reduce_params
from .kernels import falling_factorial, pochhammer
from .similarity import EquationSpec, SimilarityParams, derive_params

__all__ = [
    "DEFAULT_N",
    "MonomialTerm",
    "SeriesSolution",
    "build_solution",
    "closed_form_coeff",
    "coeff_sequence",
    "eval_monomials",
    "eval_solution",
    "monomial_expansion",
    "solution_family",
    "with_coefficient",
]

DEFAULT_N = 30


@dataclass(frozen=True)
class MonomialTerm:
    """``coef * x**ex * y**ey`` with exact rational data."""

    coef: Fraction
    ex: Fraction
    ey: Fraction

    def key(self) -> Tuple[Fraction, Fraction]:
        return (self.ex, self.ey)

    def to_json(self) -> dict:
        return {"coef": str(self.coef), "ex": str(self.ex), "ey": str(self.ey)}

    @classmethod
    def from_json(cls, d: dict) -> "MonomialTerm":
        return cls(Fraction(d["coef"]), Fraction(d["ex"]), Fraction(d["ey"]))


@dataclass(frozen=True)
class SeriesSolution:
    spec: EquationSpec
    params: SimilarityParams
    i: int
    coeffs: Tuple[Fraction, ...]

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def x_exponent(self, n: int) -> Fraction:
        return self.i + n * self.params.c

    def y_exponent(self, n: int) -> Fraction:
        return self.params.b + self.params.a * self.x_exponent(n)

    def recurrence_defects(self) -> List[int]:
        """Indices ``n >= 1`` where the stored coefficients break the recurrence."""
        p, q = self.spec.p, self.spec.q
        bad = []
        for n in range(1, len(self.coeffs)):
            lhs = self.coeffs[n] * falling_factorial(self.x_exponent(n), p)
            rhs = self.coeffs[n - 1] * falling_factorial(self.y_exponent(n - 1), q)
            if lhs != rhs:
                bad.append(n)
        return bad


def coeff_sequence(
    spec: EquationSpec, params: SimilarityParams, i: int, N: int
) -> List[Fraction]:
    if not 0 <= i < spec.p:
        raise ValueError(f"solution index i={i} outside 0..{spec.p - 1}")
    a, b, c = params.a, params.b, params.c
    coeffs = [Fraction(1)]
    for n in range(1, N + 1):
        pivot = falling_factorial(i + n * c, spec.p)
        if pivot == 0:
            raise ZeroPivot(
                f"resonance at i={i}, n={n}: ({i} + {n}*{c})_falling_{spec.p} = 0",
                i=i, n=n,
            )
        coeffs.append(coeffs[-1] * falling_factorial(b + a * (i + (n - 1) * c), spec.q) / pivot)
    return coeffs


def closed_form_coeff(spec: EquationSpec, params: SimilarityParams, i: int, n: int) -> Fraction:
    """``c_n`` from the Pochhammer product form, independent of the recurrence.

    ``K^n prod_k (i/c + (b-k)/(a c))_n / prod_m ((i-m)/c + 1)_n`` over
    ``k < q`` and all ``m < p`` (the ``m = i`` slot supplies ``n!``).
    """
    a, b, c = params.a, params.b, params.c
    value = params.scaleK ** n
    for k in range(spec.q):
        value *= pochhammer(Fraction(i) / c + (b - k) / (a * c), n)
    for m in range(spec.p):
        value /= pochhammer(Fraction(i - m) / c + 1, n)
    return value


def build_solution(
    spec: EquationSpec,
    i: int,
    N: int = DEFAULT_N,
    params: Optional[SimilarityParams] = None,
) -> SeriesSolution:
    if params is None:
        params = derive_params(spec)
    coeffs = coeff_sequence(spec, params, i, N)
    return SeriesSolution(spec=spec, params=params, i=i, coeffs=tuple(coeffs))


def with_coefficient(sol: SeriesSolution, n: int, value) -> SeriesSolution:
    """Copy of ``sol`` with ``c_n`` replaced; used for fault injection."""
    coeffs = list(sol.coeffs)
    coeffs[n] = Fraction(value)
    return replace(sol, coeffs=tuple(coeffs))


def monomial_expansion(sol: SeriesSolution) -> List[MonomialTerm]:
    return [
        MonomialTerm(coef, sol.x_exponent(n), sol.y_exponent(n))
        for n, coef in enumerate(sol.coeffs)
        if coef != 0
    ]


def _mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _check_domain(x, y):
    if not (x > 0 and y > 0):
        raise ValueError(f"evaluation needs x > 0 and y > 0, got ({x}, {y})")


def eval_solution(
    sol: SeriesSolution,
    x,
    y,
    tol: float = DEFAULT_TOL,
    dps: Optional[int] = None,
) -> mpmath.mpf:
    """``y^b (x y^a)^i F(K (x y^a)^c)`` with ``F`` the order-reduced series.

    The result is an mpmath number; wrap in ``float`` for plain use.
    """
    _check_domain(x, y)
    spec, params = sol.spec, sol.params
    h = reduce_params(build_pfq(spec, params, sol.i))
    with mpmath.workdps(max(dps or 0, 50)):
        xm, ym = _mpf(x), _mpf(y)
        t = xm * ym ** _mpf(params.a)
        z = t ** _mpf(params.c)
    res = eval_pfq(h, z, tol=tol, dps=dps)
    with mpmath.workdps(max(res.dps, dps or 0, 50)):
        return ym ** _mpf(params.b) * t ** sol.i * res.value


def eval_monomials(sol: SeriesSolution, x, y, dps: int = 30) -> mpmath.mpf:
    """Truncated sum of the stored monomial ledger at (x, y)."""
    _check_domain(x, y)
    with mpmath.workdps(dps):
        xm, ym = _mpf(x), _mpf(y)
        return mpmath.fsum(
            _mpf(term.coef) * xm ** _mpf(term.ex) * ym ** _mpf(term.ey)
            for term in monomial_expansion(sol)
        )


def solution_family(spec: EquationSpec, N: int = DEFAULT_N) -> List[SeriesSolution]:
    params = derive_params(spec)
    sols, failures = [], []
    for i in range(spec.p):
        try:
            sols.append(build_solution(spec, i, N, params))
        except ZeroPivot as exc:
            failures.append((i, exc))
    if failures:
        detail = ", ".join(f"i={i} (n={exc.n})" for i, exc in failures)
        raise FamilyError(f"resonant indices for {spec.label()}: {detail}", failures)
    return sols
