"""curvezeta: exact p-adic zeta functions and monodromy invariants of tuples
of plane curves over Q.

The pipeline: embedded resolution by point blow-ups over Q, reduction mod p
with good-reduction checks, closed-form multivariate zeta functions twisted
by multiplicative characters, polar hyperplane analysis, monodromy zeta
functions and Alexander-support certificates, and a brute-force p-adic
integration oracle for end-to-end verification.
"""

__version__ = "0.1.0"

from .algebra import (
    CyclotomicNumber,
    DenominatorFactor,
    MultiPolynomial,
    RationalFunctionT,
)
from .exprparse import parse_polynomial

__all__ = [
    "CyclotomicNumber",
    "DenominatorFactor",
    "MultiPolynomial",
    "RationalFunctionT",
    "parse_polynomial",
    "__version__",
]
