"""Exact arithmetic kernel: polynomials, cyclotomic numbers, rational
functions with binomial denominators, and integer matrix normal forms."""

from .cyclotomic import CyclotomicNumber, as_cyclotomic, cyclotomic_polynomial, euler_phi
from .intmat import (
    identity_matrix,
    invariant_factors,
    kernel_rank,
    mat_det,
    mat_mul,
    matrix_rank,
    smith_normal_form,
)
from .multipoly import (
    MultiPolynomial,
    NotDivisibleError,
    grlex_key,
    poly_gcd_univariate,
)
from .ratfunc import DenominatorFactor, RationalFunctionT, binomial_divide

__all__ = [
    "CyclotomicNumber",
    "DenominatorFactor",
    "MultiPolynomial",
    "NotDivisibleError",
    "RationalFunctionT",
    "as_cyclotomic",
    "binomial_divide",
    "cyclotomic_polynomial",
    "euler_phi",
    "grlex_key",
    "identity_matrix",
    "invariant_factors",
    "kernel_rank",
    "mat_det",
    "mat_mul",
    "matrix_rank",
    "poly_gcd_univariate",
    "smith_normal_form",
]
