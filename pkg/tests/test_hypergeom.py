import math
from dataclasses import replace
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from selfsim.errors import MaxTermsExceeded, PoleInDenominatorParam, PrecisionExhausted
from selfsim.hypergeom import (
    ConvergenceClass,
    HypergeomSpec,
    build_pfq,
    convergence_class,
    eval_pfq,
    eval_pfq_exact,
    pfq_terms_exact,
    reduce_params,
)
from selfsim.kernels import pochhammer
from selfsim.sampling import standard_cases
from selfsim.similarity import EquationSpec, derive_params

F = Fraction


def _family_specs():
    out = []
    for spec in standard_cases():
        P = derive_params(spec)
        for i in range(spec.p):
            out.append(reduce_params(build_pfq(spec, P, i)))
    return out


FAMILY = _family_specs()


def direct_sum(num, den, w, n_terms, factorial=True):
    """Independent oracle: each term from Pochhammer products, no ratios."""
    total = F(0)
    for n in range(n_terms):
        term = F(w) ** n
        for a in num:
            term *= pochhammer(a, n)
        for b in den:
            term /= pochhammer(b, n)
        if factorial:
            term /= math.factorial(n)
        total += term
    return total


def test_build_e1(e1):
    P = derive_params(e1)
    h0 = build_pfq(e1, P, 0)
    assert h0.num_params == (F(1, 3),)
    assert h0.den_params == (F(2, 3), F(1, 3))
    assert h0.scaleK == F(-1, 27)
    h1 = build_pfq(e1, P, 1)
    assert h1.num_params == (F(2, 3),)
    assert sorted(h1.den_params) == [F(2, 3), F(4, 3)]


def test_zero_upper_parameter_when_b_vanishes(e1):
    P = replace(derive_params(e1), b=F(0))
    h = build_pfq(e1, P, 0)
    assert h.num_params == (0,)
    assert eval_pfq(h, 5).value == 1
    assert eval_pfq(h, -123).value == 1


def test_reduce_examples():
    h = HypergeomSpec((F(1, 3),), (F(2, 3), F(1, 3)), F(1))
    r = reduce_params(h)
    assert r.num_params == () and r.den_params == (F(2, 3),) and r.reduced

    h = HypergeomSpec((F(1, 2), F(2, 3)), (F(2, 3), F(5, 4)), F(1))
    r = reduce_params(h)
    assert r.num_params == (F(1, 2),) and r.den_params == (F(5, 4),)

    h = HypergeomSpec((), (F(7, 5),), F(1))
    r = reduce_params(h)
    assert (r.num_params, r.den_params) == ((), (F(7, 5),))


def test_reduce_is_multiset_cancellation():
    h = HypergeomSpec((F(1, 2), F(1, 2)), (F(1, 2), F(3, 2)), F(1))
    r = reduce_params(h)
    assert r.num_params == (F(1, 2),) and r.den_params == (F(3, 2),)


def test_top_index_cancels_against_factorial(e1):
    P = derive_params(e1)
    h = build_pfq(e1, P, 2)
    assert F(1) in h.num_params
    r = reduce_params(h)
    assert not r.factorial and r.cancelled == (F(1),)
    assert r.order == (1, 2)  # standard notation keeps an upper 1


def test_reduced_counts_for_family():
    for spec in standard_cases():
        P = derive_params(spec)
        for i in range(spec.p):
            r = reduce_params(build_pfq(spec, P, i))
            assert len(r.cancelled) == 1
            assert len(r.num_params) == spec.q - 1
            assert len(r.den_params) + r.factorial == spec.p - 1


def test_eval_at_zero():
    h = HypergeomSpec((F(1, 2),), (F(2, 3),), F(-3))
    res = eval_pfq(h, 0)
    assert res.value == 1 and res.terms_used == 1 and res.bound_on_tail == 0


def test_0f1_against_direct_summation():
    h = HypergeomSpec((), (F(2, 3),), F(1))
    for z in (F(1, 10), F(1, 2), F(-1, 3)):
        ref = direct_sum([], [F(2, 3)], z, 40)
        got = eval_pfq(h, z).value
        ref = mpmath.mpf(ref.numerator) / ref.denominator
        assert abs(got - ref) <= 1e-12 * abs(ref)


def test_0f1_against_mpmath():
    h = HypergeomSpec((), (F(2, 3),), F(-1, 27))
    for z in (0.5, 1, 10, 100):
        ref = mpmath.hyp0f1(mpmath.mpf(2) / 3, -mpmath.mpf(z) / 27)
        assert abs(eval_pfq(h, z).value - ref) <= 1e-12 * abs(ref)


def test_ratio_recurrence_matches_direct_terms():
    h = HypergeomSpec((F(1, 3), F(-5, 2)), (F(4, 3), F(7, 5), F(2, 9)), F(-7, 4))
    z = F(3, 2)
    terms = pfq_terms_exact(h, z, 25)
    assert sum(terms) == direct_sum(h.num_params, h.den_params, h.scaleK * z, 25)


def test_terminating_upper_parameter():
    h = HypergeomSpec((F(-3),), (F(1, 2),), F(1))
    res = eval_pfq(h, 2)
    assert res.bound_on_tail == 0
    assert res.value == pytest.approx(float(direct_sum([F(-3)], [F(1, 2)], 2, 10)), rel=1e-15)


def test_convergence_class():
    for spec in (EquationSpec(1, 3, 1), EquationSpec(2, 4, 3)):
        P = derive_params(spec)
        for i in range(spec.p):
            assert convergence_class(build_pfq(spec, P, i)) is ConvergenceClass.ENTIRE
            assert convergence_class(reduce_params(build_pfq(spec, P, i))) is ConvergenceClass.ENTIRE
    with pytest.raises(AssertionError):
        convergence_class(HypergeomSpec((F(1), F(2), F(3)), (F(1, 2),), F(1)))


def test_pole_detected_at_build_time():
    spec = EquationSpec(1, 3, 1, 2, 0)  # c = 1 puts a 0 among the lower parameters
    with pytest.raises(PoleInDenominatorParam) as info:
        build_pfq(spec, derive_params(spec), 0)
    assert (0, 1) in info.value.collisions


def test_pole_detected_at_eval_time():
    with pytest.raises(PoleInDenominatorParam):
        eval_pfq(HypergeomSpec((F(1, 2),), (F(-2),), F(1)), 1)
    # a terminating upper parameter closer to zero wins
    eval_pfq(HypergeomSpec((F(-1),), (F(-2),), F(1)), 1)


def test_max_terms_exceeded_carries_partial():
    h = HypergeomSpec((), (), F(1))
    with pytest.raises(MaxTermsExceeded) as info:
        eval_pfq(h, 1000, max_terms=20)
    assert info.value.partial is not None and info.value.terms_used == 20


def test_bad_tol():
    with pytest.raises(ValueError):
        eval_pfq(HypergeomSpec((), (F(1, 2),), F(1)), 1, tol=0)


def test_cancellation_raises_working_precision():
    h = HypergeomSpec((), (F(2, 3),), F(-1, 27))
    res = eval_pfq(h, 10_000)
    ref = mpmath.hyp0f1(mpmath.mpf(2) / 3, -mpmath.mpf(10_000) / 27)
    assert res.dps > 30
    assert abs(res.value - ref) <= 1e-12 * abs(ref)


FAST = [h for h in FAMILY if h.order[1] >= h.order[0] + 1]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FAST), st.fractions(min_value=-10, max_value=0, max_denominator=50))
def test_exact_and_float_agree_on_alternating_side(h, w):
    assume(w != 0)
    z = w / h.scaleK
    exact = eval_pfq_exact(h, z, 30)
    got = eval_pfq(h, z).value
    ref = mpmath.mpf(exact.numerator) / exact.denominator
    assert abs(got - ref) <= 1e-12 * abs(ref)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FAMILY), st.floats(min_value=-50, max_value=50))
def test_tail_bound_is_honest(h, z):
    res = eval_pfq(h, z, tol=1e-10)
    with mpmath.workdps(40):
        num = [mpmath.mpf(x.numerator) / x.denominator for x in h.num_params]
        den = [mpmath.mpf(x.numerator) / x.denominator for x in h.den_params]
        if not h.factorial:
            num.append(mpmath.mpf(1))
        w = mpmath.mpf(h.scaleK.numerator) / h.scaleK.denominator * mpmath.mpf(z)
        ref = mpmath.hyper(num, den, w)
        # the tail bound covers truncation; rounding is far below it
        assert abs(res.value - ref) <= res.bound_on_tail + 1e-25 * (1 + abs(ref))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FAMILY), st.floats(min_value=0.1, max_value=20))
def test_term_ratio_eventually_strictly_decreasing(h, z):
    params = list(h.num_params) + list(h.den_params)
    start = int(4 * max((abs(x) for x in params), default=0) + 4 * z + 2)
    w = h.scaleK * F(z)
    ratios = []
    for n in range(start, start + 40):
        r = abs(w)
        for a in h.num_params:
            r *= abs(a + n)
        for b in h.den_params:
            r /= abs(b + n)
        if h.factorial:
            r /= n + 1
        ratios.append(r)
    assert all(later < earlier for earlier, later in zip(ratios, ratios[1:]))


@pytest.mark.parametrize("w", [-1e3, -3.7e4, -3.7e6])
def test_large_negative_argument_matches_hyp0f1(w):
    # massive cancellation: terms peak near exp(2 sqrt|w|) while the sum is O(1)
    h = HypergeomSpec(num_params=(), den_params=(F(2, 3),), scaleK=F(1))
    res = eval_pfq(h, w)
    with mpmath.workdps(40):
        ref = mpmath.hyp0f1(mpmath.mpf(2) / 3, w)
    assert abs(res.value - ref) <= 1e-12 * abs(ref)
    assert res.dps > 30


def test_precision_cap_raises_instead_of_returning_noise():
    h = HypergeomSpec(num_params=(), den_params=(F(2, 3),), scaleK=F(1))
    with pytest.raises(PrecisionExhausted) as info:
        eval_pfq(h, -3.7e6, max_dps=200)
    assert info.value.dps == 200
