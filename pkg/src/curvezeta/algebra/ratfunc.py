"""Rational functions in t_1..t_r with denominators that are products of
binomials 1 - q^(-nu) t^N.

The denominator is kept as a multiset of factors; the numerator is a sparse
polynomial whose coefficients are rationals or cyclotomic numbers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .multipoly import MultiPolynomial, NotDivisibleError


@dataclass(frozen=True, order=True)
class DenominatorFactor:
    """The binomial 1 - q^(-nu) * t^N."""

    nu: int
    N: tuple

    def __post_init__(self):
        if not any(self.N):
            raise ValueError("denominator factor needs a nonzero exponent vector")

    def as_polynomial(self, q):
        r = len(self.N)
        return MultiPolynomial(
            r,
            {
                (0,) * r: Fraction(1),
                tuple(self.N): Fraction(-1, q**self.nu),
            },
        )

    def geometric_series(self, q, bound):
        """Truncated expansion of 1/(1 - q^(-nu) t^N) to total degree <= bound."""
        r = len(self.N)
        step = sum(self.N)
        terms = {}
        k = 0
        while k * step <= bound:
            terms[tuple(k * n for n in self.N)] = Fraction(1, q ** (k * self.nu))
            k += 1
        return MultiPolynomial(r, terms)


def binomial_divide(numerator, factor, q):
    """Exact quotient numerator / (1 - q^(-nu) t^N), or None on remainder."""
    try:
        return numerator.exact_div(factor.as_polynomial(q))
    except NotDivisibleError:
        return None


class RationalFunctionT:
    """numerator / prod(denominator factors), all exact."""

    __slots__ = ("q", "r", "numerator", "denominator")

    def __init__(self, q, r, numerator, denominator=()):
        self.q = q
        self.r = r
        self.numerator = numerator
        self.denominator = tuple(sorted(denominator))

    @classmethod
    def zero(cls, q, r):
        return cls(q, r, MultiPolynomial.zero(r))

    @classmethod
    def constant(cls, q, r, value):
        return cls(q, r, MultiPolynomial.constant(r, value))

    def is_zero(self):
        return self.numerator.is_zero()

    def _check(self, other):
        if self.q != other.q or self.r != other.r:
            raise ValueError("mixed base prime or variable count")

    def __add__(self, other):
        if not isinstance(other, RationalFunctionT):
            other = RationalFunctionT.constant(self.q, self.r, other)
        self._check(other)
        mine, theirs = Counter(self.denominator), Counter(other.denominator)
        union = mine | theirs
        num = self.numerator
        for fac, mult in sorted((union - mine).items()):
            num = num * fac.as_polynomial(self.q) ** mult
        onum = other.numerator
        for fac, mult in sorted((union - theirs).items()):
            onum = onum * fac.as_polynomial(self.q) ** mult
        return RationalFunctionT(self.q, self.r, num + onum, union.elements())

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionT(self.q, self.r, -self.numerator, self.denominator)

    def __sub__(self, other):
        if not isinstance(other, RationalFunctionT):
            other = RationalFunctionT.constant(self.q, self.r, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalFunctionT):
            return RationalFunctionT(
                self.q, self.r, self.numerator * other, self.denominator
            )
        self._check(other)
        return RationalFunctionT(
            self.q,
            self.r,
            self.numerator * other.numerator,
            self.denominator + other.denominator,
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RationalFunctionT):
            other = RationalFunctionT.constant(self.q, self.r, other)
        if self.q != other.q or self.r != other.r:
            return False
        mine, theirs = Counter(self.denominator), Counter(other.denominator)
        left = self.numerator
        for fac, mult in sorted((theirs - mine).items()):
            left = left * fac.as_polynomial(self.q) ** mult
        right = other.numerator
        for fac, mult in sorted((mine - theirs).items()):
            right = right * fac.as_polynomial(self.q) ** mult
        return left == right

    __hash__ = None

    def reduced(self):
        """Cancel denominator factors dividing the numerator."""
        num = self.numerator
        remaining = []
        for fac in self.denominator:
            quotient = binomial_divide(num, fac, self.q)
            if quotient is None:
                remaining.append(fac)
            else:
                num = quotient
        return RationalFunctionT(self.q, self.r, num, remaining)

    def value_at_origin(self):
        """Value at t = 0 (every denominator factor is 1 there)."""
        return self.numerator.coefficient((0,) * self.r)

    def taylor_coefficients(self, bound):
        """Coefficients of the power-series expansion, total degree <= bound."""
        series = self.numerator.truncate_total_degree(bound)
        for fac in self.denominator:
            series = (series * fac.geometric_series(self.q, bound)).truncate_total_degree(
                bound
            )
        return dict(series.terms)

    def __repr__(self):
        names = ["t"] if self.r == 1 else [f"t{j+1}" for j in range(self.r)]
        num = self.numerator.render(names)
        if not self.denominator:
            return num
        parts = []
        for fac, mult in sorted(Counter(self.denominator).items()):
            body = fac.as_polynomial(self.q).render(names)
            parts.append(f"({body})" + (f"^{mult}" if mult > 1 else ""))
        return f"({num}) / ({'*'.join(parts)})"
