"""Hypergeometric self-similar solutions of degenerate high-order equations.

Four equation families ``x^alpha D_x^p u = y^beta D_y^q u`` and variants are
reduced by ``u = y^b v(x y^a)`` to generalized hypergeometric series.  The
package derives the similarity data, builds the p solutions with exact
rational coefficients, evaluates them, and verifies them exactly.
"""

from .errors import (
    DegenerateEquationError,
    FamilyError,
    InvalidSpecError,
    MaxTermsExceeded,
    PoleInDenominatorParam,
    PrecisionExhausted,
    SelfSimError,
    ZeroPivot,
)
from .hypergeom import (
    EvalResult,
    HypergeomSpec,
    build_pfq,
    convergence_class,
    eval_pfq,
    eval_pfq_exact,
    reduce_params,
)
from .kernels import a_coeff, a_coeff_oracle, binomial, falling_factorial, pochhammer
from .residual import ResidualReport, apply_operator, residual_numeric, residual_series
from .series import (
    MonomialTerm,
    SeriesSolution,
    build_solution,
    closed_form_coeff,
    coeff_sequence,
    eval_solution,
    monomial_expansion,
    solution_family,
)
from .similarity import (
    EquationKind,
    EquationSpec,
    IndependenceReport,
    SimilarityParams,
    derive_b,
    derive_params,
    independence_check,
)

__version__ = "0.1.0"
