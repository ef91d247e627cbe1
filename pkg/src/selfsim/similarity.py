"""The four degenerate equation families and their similarity parameters.

Kinds (``D_x^p``, ``D_y^q`` partial derivatives, ``p > q``):

* kind 1: ``x^alpha D_x^p u - y^beta D_y^q u = 0``, ``0 <= alpha < p``, ``0 <= beta < q``
* kind 2: ``y^beta D_x^p u - x^alpha D_y^q u = 0``, ``alpha, beta >= 0``
* kind 3: ``x^alpha y^beta D_x^p u - D_y^q u = 0``, ``0 <= alpha < p``, ``beta >= 0``
* kind 4: ``D_x^p u - x^alpha y^beta D_y^q u = 0``, ``alpha >= 0``, ``0 <= beta < q``

Solutions are sought as ``u = y^b v(t)`` with ``t = x y^a``; the second
substitution ``z = t^c`` turns the reduced ODE into a hypergeometric one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import DegenerateEquationError, InvalidSpecError
from .kernels import falling_factorial, to_fraction

__all__ = [
    "EquationKind",
    "EquationSpec",
    "IndependenceReport",
    "SimilarityParams",
    "derive_b",
    "derive_params",
    "independence_check",
    "is_resonant",
    "printed_b",
    "resonances",
]


class EquationKind(IntEnum):
    EQ1 = 1
    EQ2 = 2
    EQ3 = 3
    EQ4 = 4

    @property
    def c_sign(self) -> int:
        """+1 when ``c = p + alpha`` (kinds 2, 4), -1 when ``c = p - alpha``."""
        return 1 if self in (EquationKind.EQ2, EquationKind.EQ4) else -1

    @property
    def q_sign(self) -> int:
        """+1 when ``a c = -(q + beta)`` (kinds 2, 3), -1 when ``-(q - beta)``."""
        return 1 if self in (EquationKind.EQ2, EquationKind.EQ3) else -1

    @property
    def requires_nonintegral_alpha(self) -> bool:
        return self in (EquationKind.EQ1, EquationKind.EQ3)


@dataclass(frozen=True)
class EquationSpec:
    """One of the four equations with integer orders and rational exponents."""

    kind: EquationKind
    p: int
    q: int
    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)

    def __post_init__(self):
        try:
            kind = EquationKind(int(self.kind))
        except ValueError:
            raise InvalidSpecError(f"kind must be 1..4, got {self.kind!r}") from None
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "alpha", to_fraction(self.alpha))
        object.__setattr__(self, "beta", to_fraction(self.beta))
        for name in ("p", "q"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidSpecError(f"{name} must be an integer, got {value!r}")
        self._check()

    def _check(self):
        p, q, alpha, beta = self.p, self.q, self.alpha, self.beta
        if q < 1:
            raise InvalidSpecError(f"q >= 1 violated (q={q})")
        if not p > q:
            raise InvalidSpecError(f"p > q violated (p={p}, q={q})")
        if alpha < 0:
            raise InvalidSpecError(f"alpha >= 0 violated (alpha={alpha})")
        if beta < 0:
            raise InvalidSpecError(f"beta >= 0 violated (beta={beta})")
        if self.kind in (EquationKind.EQ1, EquationKind.EQ3) and not alpha < p:
            raise InvalidSpecError(f"alpha < p violated (alpha={alpha}, p={p})")
        if self.kind in (EquationKind.EQ1, EquationKind.EQ4) and not beta < q:
            raise InvalidSpecError(f"beta < q violated (beta={beta}, q={q})")

    @property
    def c(self) -> Fraction:
        return self.p + self.kind.c_sign * self.alpha

    @property
    def q_comb(self) -> Fraction:
        """The signed combination ``q -+ beta`` equal to ``-a c``."""
        return self.q + self.kind.q_sign * self.beta

    def label(self) -> str:
        return f"Eq{int(self.kind)}(p={self.p}, q={self.q}, alpha={self.alpha}, beta={self.beta})"


@dataclass(frozen=True)
class SimilarityParams:
    a: Fraction
    b: Fraction
    c: Fraction
    gammas: Tuple[Fraction, ...]
    scaleK: Fraction


def derive_b(spec: EquationSpec) -> Fraction:
    """Exponent ``b`` that makes one upper parameter equal a lower one.

    Solves ``i/c + (b - q + 1)/(a c) = (i - p + 1)/c + 1``, whose solution
    ``b = q - 1 + a (c - p + 1)`` does not depend on ``i``.
    """
    c = spec.c
    if c == 0:
        raise DegenerateEquationError(f"c = 0 for {spec.label()}")
    a = -spec.q_comb / c
    return spec.q - 1 + a * (c - spec.p + 1)


def printed_b(spec: EquationSpec) -> Optional[Fraction]:
    """The per-kind closed forms for ``b`` as published, for cross-checking.

    Returns ``None`` when the published expression has a zero denominator.
    The kind-2 expression is kept verbatim even though it disagrees with
    :func:`derive_b` in general.
    """
    p, q, al, be = spec.p, spec.q, spec.alpha, spec.beta
    kind = spec.kind
    if kind is EquationKind.EQ1:
        return q - 1 + (al - 1) * (q - be) / (p - al)
    if kind is EquationKind.EQ2:
        if p == al:
            return None
        return q - 1 - (al + 1) * (q - be) / (p - al)
    if kind is EquationKind.EQ3:
        return q - 1 + (al - 1) * (q + be) / (p - al)
    return q - 1 - (al + 1) * (q - be) / (p + al)


def derive_params(spec: EquationSpec) -> SimilarityParams:
    c = spec.c
    if c == 0:
        raise DegenerateEquationError(f"c = p - alpha = 0 for {spec.label()}")
    a = -spec.q_comb / c
    gammas = tuple(Fraction(i) / c for i in range(spec.p))
    scaleK = a ** spec.q / c ** (spec.p - spec.q)
    return SimilarityParams(a=a, b=derive_b(spec), c=c, gammas=gammas, scaleK=scaleK)


@dataclass(frozen=True)
class IndependenceReport:
    ok: bool
    alpha_integral_violation: bool
    violating_pairs: List[Tuple[int, int]] = field(default_factory=list)


def independence_check(spec: EquationSpec, b: Optional[Fraction] = None) -> IndependenceReport:
    """Check the sufficient conditions for p linearly independent solutions.

    Kinds 1 and 3 additionally need alpha not a positive integer; for every
    kind the quantity ``i/c - (b - s)/(q -+ beta)`` must be non-zero for all
    ``i < p``, ``s < q``.  ``b`` defaults to :func:`derive_b`.
    """
    if b is None:
        b = derive_b(spec)
    b = to_fraction(b)
    alpha = spec.alpha
    alpha_bad = (
        spec.kind.requires_nonintegral_alpha
        and alpha.denominator == 1
        and alpha >= 1
    )
    c, qc = spec.c, spec.q_comb
    pairs = [
        (i, s)
        for i in range(spec.p)
        for s in range(spec.q)
        if Fraction(i) / c - (b - s) / qc == 0
    ]
    return IndependenceReport(
        ok=not alpha_bad and not pairs,
        alpha_integral_violation=alpha_bad,
        violating_pairs=pairs,
    )


def resonances(spec: EquationSpec, params: Optional[SimilarityParams] = None) -> List[Tuple[int, int]]:
    """All ``(i, n)``, ``n >= 1``, where ``(i + n c)falling_p`` vanishes.

    That happens exactly when ``i + n c`` is an integer in ``0..p-1``; since
    ``c > 0`` only finitely many ``n`` need checking.
    """
    if params is None:
        params = derive_params(spec)
    c = params.c
    out = []
    for i in range(spec.p):
        n = 1
        while i + n * c <= spec.p - 1:
            if falling_factorial(i + n * c, spec.p) == 0:
                out.append((i, n))
            n += 1
    return out


def is_resonant(spec: EquationSpec) -> bool:
    return bool(resonances(spec))
