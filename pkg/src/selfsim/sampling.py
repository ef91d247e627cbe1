"""Deterministic generators of valid equation specs for tests and scripts."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterator, List, Tuple

from .errors import InvalidSpecError
from .similarity import EquationKind, EquationSpec, is_resonant

ORDER_PAIRS: Tuple[Tuple[int, int], ...] = ((2, 1), (3, 1), (3, 2), (4, 2), (5, 3))

# (integer sample, integer-free sample) of (alpha, beta) per kind; every pair
# satisfies the kind's bounds for all ORDER_PAIRS and avoids resonance
_STANDARD_EXPONENTS = {
    EquationKind.EQ1: ((0, 0), (Fraction(1, 2), Fraction(1, 2))),
    EquationKind.EQ2: ((1, 1), (Fraction(3, 2), Fraction(1, 2))),
    EquationKind.EQ3: ((0, 1), (Fraction(1, 2), Fraction(3, 2))),
    EquationKind.EQ4: ((1, 0), (Fraction(3, 2), Fraction(1, 2))),
}


def standard_cases() -> List[EquationSpec]:
    """4 kinds x 5 order pairs x 2 exponent samples = 40 specs."""
    out = []
    for kind, samples in _STANDARD_EXPONENTS.items():
        for p, q in ORDER_PAIRS:
            for alpha, beta in samples:
                out.append(EquationSpec(kind, p, q, alpha, beta))
    return out


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = 7) -> Fraction:
    """Uniform-ish rational in ``[lo, hi)`` with denominator at most ``max_den``."""
    den = rng.randint(1, max_den)
    lo_num = -((-lo * den) // 1)  # ceil(lo * den)
    hi_num = -((-hi * den) // 1) - 1
    if hi_num < lo_num:
        return Fraction(lo)
    return Fraction(rng.randint(int(lo_num), int(hi_num)), den)


def random_spec(
    rng: random.Random,
    kind: EquationKind,
    allow_resonant: bool = False,
    max_p: int = 5,
    max_exponent: int = 4,
    require_fractional: bool = False,
    attempts: int = 1000,
) -> EquationSpec:
    kind = EquationKind(kind)
    for _ in range(attempts):
        p = rng.randint(2, max_p)
        q = rng.randint(1, p - 1)
        alpha_hi = Fraction(p) if kind in (EquationKind.EQ1, EquationKind.EQ3) else Fraction(max_exponent)
        beta_hi = Fraction(q) if kind in (EquationKind.EQ1, EquationKind.EQ4) else Fraction(max_exponent)
        alpha = random_rational(rng, Fraction(0), alpha_hi)
        beta = random_rational(rng, Fraction(0), beta_hi)
        if require_fractional and (alpha.denominator == 1 or beta.denominator == 1):
            continue
        try:
            spec = EquationSpec(kind, p, q, alpha, beta)
        except InvalidSpecError:
            continue
        if not allow_resonant and is_resonant(spec):
            continue
        return spec
    raise RuntimeError(f"no valid spec found for kind {int(kind)} in {attempts} attempts")


def random_specs(
    seed: int, per_kind: int, kinds=tuple(EquationKind), **kwargs
) -> Iterator[EquationSpec]:
    rng = random.Random(seed)
    for kind in kinds:
        for _ in range(per_kind):
            yield random_spec(rng, kind, **kwargs)


def log_grid(lo: float, hi: float, n: int) -> List[float]:
    step = (math.log(hi) - math.log(lo)) / (n - 1)
    return [math.exp(math.log(lo) + k * step) for k in range(n)]
