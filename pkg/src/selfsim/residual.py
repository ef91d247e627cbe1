"""Verification that the constructed series solve their equations.

The exact path maps every monomial of a truncated solution through the
equation's two operator sides and sums the images keyed by exponent pair.
Adjacent terms must cancel slot by slot, leaving only the image of the last
term under the y-side operator.  The numeric path applies central finite
differences to the evaluated solution and is a sanity layer only.
"""

from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import mpmath

from .kernels import falling_factorial
from .series import MonomialTerm, SeriesSolution, eval_monomials, eval_solution
from .similarity import EquationKind, EquationSpec

__all__ = [
    "ResidualReport",
    "apply_operator",
    "central_weights",
    "predicted_trailing",
    "residual_numeric",
    "residual_numeric_fn",
    "residual_series",
]

_EPS_FLOOR = mpmath.mpf("1e-300")


def _multipliers(spec: EquationSpec) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
    """(x, y) exponents of the coefficient on the x-side and on the y-side."""
    zero, al, be = Fraction(0), spec.alpha, spec.beta
    return {
        EquationKind.EQ1: ((al, zero), (zero, be)),
        EquationKind.EQ2: ((zero, be), (al, zero)),
        EquationKind.EQ3: ((al, be), (zero, zero)),
        EquationKind.EQ4: ((zero, zero), (al, be)),
    }[spec.kind]


def apply_operator(spec: EquationSpec, term: MonomialTerm) -> Tuple[MonomialTerm, MonomialTerm]:
    """Images of one monomial under the x-side and y-side of the equation.

    The equation reads ``left(u) - right(u) = 0``.  Returned coefficients may
    be zero (e.g. ``D_x^p`` of ``x^k`` for integer ``k < p``).
    """
    (lx, ly), (rx, ry) = _multipliers(spec)
    p, q = spec.p, spec.q
    left = MonomialTerm(
        term.coef * falling_factorial(term.ex, p), term.ex - p + lx, term.ey + ly
    )
    right = MonomialTerm(
        term.coef * falling_factorial(term.ey, q), term.ex + rx, term.ey - q + ry
    )
    return left, right


def predicted_trailing(sol: SeriesSolution) -> MonomialTerm:
    """Closed form of the single residual monomial left by truncation at N."""
    N = sol.N
    _, (rx, ry) = _multipliers(sol.spec)
    ey = sol.y_exponent(N)
    return MonomialTerm(
        -sol.coeffs[N] * falling_factorial(ey, sol.spec.q),
        sol.x_exponent(N) + rx,
        ey - sol.spec.q + ry,
    )


@dataclass(frozen=True)
class ResidualReport:
    interior_ok: bool
    trailing: MonomialTerm
    max_interior_coeff: Fraction
    predicted: MonomialTerm
    first_failure: Optional[Tuple[Optional[int], Fraction]] = None

    @property
    def trailing_matches(self) -> bool:
        return self.trailing == self.predicted

    @property
    def ok(self) -> bool:
        return self.interior_ok and self.trailing_matches

    def to_json(self) -> dict:
        out = {
            "interior_ok": self.interior_ok,
            "trailing_matches": self.trailing_matches,
            "trailing": self.trailing.to_json(),
            "predicted_trailing": self.predicted.to_json(),
            "max_interior_coeff": str(self.max_interior_coeff),
            "first_failure": None,
        }
        if self.first_failure is not None:
            n, coef = self.first_failure
            out["first_failure"] = {"n": n, "coef": str(coef)}
        return out


def _check_alignment(sol: SeriesSolution):
    # x-side image of term n+1 must land on the y-side image of term n
    spec = sol.spec
    (lx, ly), (rx, ry) = _multipliers(spec)
    c, a = sol.params.c, sol.params.a
    if c - spec.p + lx != rx:
        raise AssertionError(f"x-exponents do not align: c={c}, p={spec.p}, alpha={spec.alpha}")
    if a * c + ly != -spec.q + ry:
        raise AssertionError(f"y-exponents do not align: a*c={a * c}, q={spec.q}, beta={spec.beta}")


def residual_series(sol: SeriesSolution) -> ResidualReport:
    _check_alignment(sol)
    acc: Dict[Tuple[Fraction, Fraction], Fraction] = defaultdict(Fraction)
    slot_of: Dict[Tuple[Fraction, Fraction], int] = {}
    for n, coef in enumerate(sol.coeffs):
        term = MonomialTerm(coef, sol.x_exponent(n), sol.y_exponent(n))
        left, right = apply_operator(sol.spec, term)
        acc[left.key()] += left.coef
        acc[right.key()] -= right.coef
        slot_of.setdefault(right.key(), n)
        slot_of.setdefault(left.key(), n - 1)

    predicted = predicted_trailing(sol)
    tkey = predicted.key()
    trailing = MonomialTerm(acc.get(tkey, Fraction(0)), *tkey)

    failures = [
        (slot_of.get(key), value)
        for key, value in acc.items()
        if key != tkey and value != 0
    ]
    failures.sort(key=lambda f: (f[0] is None, f[0] if f[0] is not None else 0))
    max_interior = max((abs(v) for _, v in failures), default=Fraction(0))
    return ResidualReport(
        interior_ok=not failures,
        trailing=trailing,
        max_interior_coeff=max_interior,
        predicted=predicted,
        first_failure=failures[0] if failures else None,
    )


# ---------------------------------------------------------------------------
# finite differences
# ---------------------------------------------------------------------------

def central_weights(deriv: int, accuracy: int = 4) -> Tuple[List[int], List[Fraction]]:
    """Exact central-difference weights on integer offsets (Fornberg's method).

    Returns ``(offsets, weights)`` such that
    ``f^(deriv)(x) ~ sum(w * f(x + k h)) / h**deriv`` with error ``O(h**accuracy)``.
    """
    if accuracy % 2:
        raise ValueError("central stencils need an even accuracy order")
    npts = 2 * ((deriv + 1) // 2) - 1 + accuracy
    half = npts // 2
    offsets = list(range(-half, half + 1))
    nodes = [Fraction(k) for k in offsets]
    # weights[j][d]: weight of node j for the d-th derivative at 0
    weights = [[Fraction(0)] * (deriv + 1) for _ in nodes]
    weights[0][0] = Fraction(1)
    c1 = Fraction(1)
    c4 = nodes[0]
    for i in range(1, len(nodes)):
        mn = min(i, deriv)
        c2 = Fraction(1)
        c5, c4 = c4, nodes[i]
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    weights[i][k] = c1 * (k * weights[i - 1][k - 1] - c5 * weights[i - 1][k]) / c2
                weights[i][0] = -c1 * c5 * weights[i - 1][0] / c2
            for k in range(mn, 0, -1):
                weights[j][k] = (c4 * weights[j][k] - k * weights[j][k - 1]) / c3
            weights[j][0] = c4 * weights[j][0] / c3
        c1 = c2
    return offsets, [w[deriv] for w in weights]


def residual_numeric_fn(
    spec: EquationSpec,
    f: Callable,
    points: Iterable[Tuple[float, float]],
    h: float,
    accuracy: int = 4,
    dps: int = 60,
) -> float:
    """Max relative residual of ``f`` under the equation via finite differences.

    ``f(x, y)`` is called with mpmath numbers.  The relative residual at a
    node is ``|L - R| / (|L| + |R| + 1e-300)``.
    """
    p, q = spec.p, spec.q
    offs_p, w_p = central_weights(p, accuracy)
    offs_q, w_q = central_weights(q, accuracy)
    reach = max(max(p, q) + 2, offs_p[-1] + 1, offs_q[-1] + 1)
    (lx, ly), (rx, ry) = _multipliers(spec)
    worst = mpmath.mpf(0)
    with mpmath.workdps(dps):
        hm = mpmath.mpf(h)
        for x, y in points:
            if min(x, y) < reach * h:
                raise ValueError(
                    f"point ({x}, {y}) closer than {reach}*h to an axis"
                )
            if h > 0.05 * min(x, y):
                warnings.warn(f"step h={h} is large relative to point ({x}, {y})")
            if h < 1e-10:
                warnings.warn(f"step h={h} is very small; precision loss likely")
            xm, ym = mpmath.mpf(x), mpmath.mpf(y)
            dxp = mpmath.fsum(
                mpmath.mpf(w.numerator) / w.denominator * f(xm + k * hm, ym)
                for k, w in zip(offs_p, w_p) if w
            ) / hm ** p
            dyq = mpmath.fsum(
                mpmath.mpf(w.numerator) / w.denominator * f(xm, ym + k * hm)
                for k, w in zip(offs_q, w_q) if w
            ) / hm ** q
            left = xm ** _m(lx) * ym ** _m(ly) * dxp
            right = xm ** _m(rx) * ym ** _m(ry) * dyq
            rel = abs(left - right) / (abs(left) + abs(right) + _EPS_FLOOR)
            worst = max(worst, rel)
    return float(worst)


def _m(r: Fraction) -> mpmath.mpf:
    return mpmath.mpf(r.numerator) / r.denominator


def residual_numeric(
    sol: SeriesSolution,
    points: Sequence[Tuple[float, float]],
    h: float = 1e-3,
    source: str = "pfq",
    accuracy: int = 4,
    dps: int = 60,
) -> float:
    """Finite-difference residual of one solution.

    ``source="pfq"`` differentiates the hypergeometric evaluation;
    ``source="series"`` differentiates the stored truncated monomial ledger,
    so corrupted coefficients show up.
    """
    if source == "pfq":
        def f(x, y):
            return eval_solution(sol, x, y, tol=mpmath.mpf(10) ** (-(dps - 15)), dps=dps)
    elif source == "series":
        def f(x, y):
            return eval_monomials(sol, x, y, dps=dps)
    else:
        raise ValueError(f"unknown source {source!r}")
    return residual_numeric_fn(sol.spec, f, points, h, accuracy=accuracy, dps=dps)
