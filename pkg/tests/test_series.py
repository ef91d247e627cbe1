import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfsim.errors import FamilyError, ZeroPivot
from selfsim.kernels import pochhammer
from selfsim.residual import residual_series
from selfsim.sampling import random_specs
from selfsim.series import (
    MonomialTerm,
    build_solution,
    closed_form_coeff,
    coeff_sequence,
    eval_monomials,
    eval_solution,
    monomial_expansion,
    solution_family,
    with_coefficient,
)
from selfsim.similarity import EquationSpec, derive_params

F = Fraction


def _mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def test_first_coefficients_e1(e1):
    P = derive_params(e1)
    c = coeff_sequence(e1, P, 0, 2)
    # c_1 = (b + a*0)falling_1 / (0 + 3)falling_3 = (-1/3) / 6
    assert c[0] == 1
    assert c[1] == F(-1, 18)
    # c_2 = c_1 * (b + a*3)falling_1 / (6)falling_3 = (-1/18)(-4/3)/120
    assert c[2] == F(-1, 18) * F(-4, 3) / 120


@pytest.mark.parametrize("spec", list(random_specs(seed=7, per_kind=5, require_fractional=True)),
                         ids=lambda s: s.label())
def test_recurrence_equals_closed_form(spec):
    P = derive_params(spec)
    for i in range(spec.p):
        seq = coeff_sequence(spec, P, i, 50)
        assert seq == [closed_form_coeff(spec, P, i, n) for n in range(51)]


def test_closed_form_matches_pochhammer_display_by_hand(e1):
    # K^n (1/3)_n / ((1)_n (2/3)_n (1/3)_n) = K^n / (n! (2/3)_n) for E1, i = 0
    P = derive_params(e1)
    for n in range(8):
        expected = F(-1, 27) ** n / (math.factorial(n) * pochhammer(F(2, 3), n))
        assert closed_form_coeff(e1, P, 0, n) == expected


def test_monomial_expansion_e1(e1):
    sol = build_solution(e1, 0, 1)
    terms = monomial_expansion(sol)
    assert terms == [
        MonomialTerm(F(1), F(0), F(-1, 3)),
        MonomialTerm(F(-1, 18), F(3), F(-4, 3)),
    ]


def test_leading_term_and_spacing(e1):
    P = derive_params(e1)
    for i in range(3):
        terms = monomial_expansion(build_solution(e1, i, 6))
        assert terms[0].ex == i
        assert terms[0].ey == P.b + P.a * i
        assert all(t2.ex - t1.ex == P.c for t1, t2 in zip(terms, terms[1:]))


def test_eval_near_axis(e1):
    sol = build_solution(e1, 0, 0)
    for y in (0.5, 1.0, 3.0):
        assert float(eval_solution(sol, 1e-9, y)) == pytest.approx(y ** (-1 / 3), rel=1e-12)


def test_eval_unit_point_matches_direct_sum(e1):
    sol = build_solution(e1, 0, 0)
    ref = sum(
        F(-1, 27) ** n / (pochhammer(F(2, 3), n) * math.factorial(n)) for n in range(40)
    )
    assert float(eval_solution(sol, 1, 1)) == pytest.approx(float(ref), rel=1e-12)


def test_eval_i1_matches_exact_truncation(e1):
    sol = build_solution(e1, 1, 30)
    exact = sum(sol.coeffs)  # x = y = 1 makes every monomial equal to its coefficient
    assert float(eval_solution(sol, 1, 1)) == pytest.approx(float(exact), rel=1e-12)


def test_eval_rejects_nonpositive_coordinates(e1):
    sol = build_solution(e1, 0, 3)
    with pytest.raises(ValueError):
        eval_solution(sol, 0, 1)
    with pytest.raises(ValueError):
        eval_solution(sol, 1, -1)
    with pytest.raises(ValueError):
        eval_monomials(sol, -1, 1)


@pytest.mark.parametrize("t", [0.1, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("y", [0.5, 1.0, 2.0])
def test_pfq_path_matches_exact_coefficients_fractional_c(eq3_frac, t, y):
    P = derive_params(eq3_frac)
    for i in range(eq3_frac.p):
        sol = build_solution(eq3_frac, i, 30)
        x = t * y ** float(-P.a)
        with mpmath.workdps(60):
            xm = mpmath.mpf(t) * mpmath.mpf(y) ** (-_mp(P.a))
            ref = eval_monomials(sol, xm, mpmath.mpf(y), dps=60)
            got = eval_solution(sol, xm, mpmath.mpf(y))
        assert abs(got - ref) <= 1e-12 * abs(ref), (i, x, y)


def test_family_shape(e1):
    fam = solution_family(e1, 10)
    assert [s.i for s in fam] == [0, 1, 2]
    assert [monomial_expansion(s)[0].ex for s in fam] == [0, 1, 2]
    assert all(s.coeffs[0] == 1 and s.N == 10 for s in fam)


def test_family_kind2_small():
    spec = EquationSpec(2, 2, 1, 1, 0)
    fam = solution_family(spec, 5)
    assert len(fam) == 2
    assert all(residual_series(s).ok for s in fam)


def test_resonance_raises_zero_pivot():
    spec = EquationSpec(1, 3, 1, 2, 0)  # c = 1: i + n c hits 0..2
    with pytest.raises(ZeroPivot) as info:
        coeff_sequence(spec, derive_params(spec), 0, 5)
    assert (info.value.i, info.value.n) == (0, 1)
    with pytest.raises(FamilyError) as info:
        solution_family(spec, 5)
    assert [i for i, _ in info.value.failures] == [0, 1]


def test_recurrence_defects_flag_corruption(e1):
    sol = build_solution(e1, 0, 6)
    assert sol.recurrence_defects() == []
    bad = with_coefficient(sol, 3, sol.coeffs[3] * 2)
    assert bad.recurrence_defects() == [3, 4]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([0, 1, 2]), st.floats(0.2, 3.0), st.floats(0.2, 3.0))
def test_fixed_similarity_variable_scales_as_y_to_b(i, t, y):
    # u = y^b v(t): along t = const the y-dependence is exactly y^b
    spec = EquationSpec(1, 3, 1)
    P = derive_params(spec)
    sol = build_solution(spec, i, 0)
    a, b = float(P.a), float(P.b)
    u1 = eval_solution(sol, t * 1.0 ** (-a), 1.0)
    u2 = eval_solution(sol, t * y ** (-a), y)
    assert float(u2 / u1) == pytest.approx(y**b, rel=1e-10)
