"""Multivariate local zeta functions of a tuple of plane curves.

The closed form is a finite sum over subsets I of divisors of the resolution:
each divisor in I contributes a geometric factor whose denominator binomial
1 - q^(-nu) t^N stays symbolic, so every pole-cancellation question reduces
to exact polynomial divisibility.  Coefficients are exact cyclotomic numbers,
never floats.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra.cyclotomic import CyclotomicNumber, as_cyclotomic
from .algebra.multipoly import MultiPolynomial
from .algebra.ratfunc import DenominatorFactor, RationalFunctionT, binomial_divide


class DivergentLimit(ArithmeticError):
    """The limit of the zeta function along s -> -infinity does not exist."""


@dataclass(frozen=True, order=True)
class Hyperplane:
    """The affine hyperplane sum_j N^j s_j + nu = 0, stored in primitive form."""

    N: tuple
    nu: int

    def __post_init__(self):
        if self.nu <= 0:
            raise ValueError("hyperplane offset must be positive")
        if not self.N or min(self.N) < 0 or not any(self.N):
            raise ValueError("hyperplane needs a nonzero nonnegative slope vector")
        g = self.nu
        for n in self.N:
            g = gcd(g, n)
        if g != 1:
            raise ValueError("hyperplane data is not primitive; use normalize()")

    @classmethod
    def normalize(cls, N, nu):
        g = nu
        for n in N:
            g = gcd(g, n)
        return cls(tuple(n // g for n in N), nu // g)

    def matches(self, N, nu):
        """Whether a raw (N, nu) pair lies on this hyperplane class."""
        return Hyperplane.normalize(N, nu) == self

    def render(self):
        names = ["s"] if len(self.N) == 1 else [f"s{j + 1}" for j in range(len(self.N))]
        parts = []
        for n, name in zip(self.N, names):
            if n == 0:
                continue
            parts.append(name if n == 1 else f"{n}*{name}")
        return " + ".join(parts + [str(self.nu)]) + " = 0"

    def __repr__(self):
        return f"Hyperplane({self.render()!r})"


class ZetaFunction:
    """Assembled zeta function with its term-by-term provenance.

    `terms` records the (I, c) pairs the sum was built from; `divisor_data`
    maps each divisor id appearing in some I to its (nu, N) so the limit and
    pole computations need no access to the full resolution graph.
    """

    __slots__ = ("function", "terms", "p", "chi", "phi", "divisor_data")

    def __init__(self, function, terms, p, chi, phi, divisor_data):
        self.function = function
        self.terms = tuple(terms)
        self.p = p
        self.chi = chi
        self.phi = phi
        self.divisor_data = dict(divisor_data)

    @property
    def r(self):
        return self.function.r

    def value_at_origin(self):
        return self.function.value_at_origin()

    def taylor_coefficients(self, bound):
        return self.function.taylor_coefficients(bound)

    def reduced_function(self):
        return self.function.reduced()

    def is_constant(self):
        reduced = self.reduced_function()
        return not reduced.denominator and reduced.numerator.is_constant()

    def as_dict(self):
        """JSON-friendly exact description."""
        reduced = self.reduced_function()
        return {
            "p": self.p,
            "r": self.r,
            "chi": list(self.chi.exponents),
            "phi": self.phi.label(),
            "numerator": [
                {"exponents": list(e), "coefficient": as_cyclotomic(c).to_strings()}
                for e, c in reduced.numerator.sorted_terms()
            ],
            "denominator": [
                {"nu": fac.nu, "N": list(fac.N), "multiplicity": mult}
                for fac, mult in sorted(Counter(reduced.denominator).items())
            ],
            "terms": [
                {"divisors": list(I), "coefficient": as_cyclotomic(c).to_strings()}
                for I, c in self.terms
            ],
        }

    def __repr__(self):
        return f"ZetaFunction({self.function!r})"


def _geometric_factor(q, r, nu, N):
    """(q-1) q^(-nu) t^N / (1 - q^(-nu) t^N)."""
    mono = MultiPolynomial.monomial(tuple(N), Fraction(q - 1, q**nu))
    return RationalFunctionT(q, r, mono, (DenominatorFactor(nu, tuple(N)),))


def denef_zeta(reduced, chi, phi):
    """Assemble the zeta function from counted residue-field data.

    Sums q^(-2) * c_{I,chi,phi} * prod_{i in I} (q-1) q^(-nu_i) t^(N_i) /
    (1 - q^(-nu_i) t^(N_i)) over the subsets I of divisors on which the
    character compatibility condition holds and the coefficient is nonzero.
    On a surface only |I| <= 2 contributes: triple intersections are empty.
    """
    graph = reduced.graph
    q, r = reduced.p, graph.r

    subsets = [()]
    for d in graph.divisors:
        if chi.gamma(d.N):
            subsets.append((d.id,))
    seen = set()
    for ix in graph.intersections:
        pair = tuple(sorted(ix.divisors))
        if pair in seen:
            continue
        seen.add(pair)
        if all(chi.gamma(graph.divisor(i).N) for i in pair):
            subsets.append(pair)

    total = RationalFunctionT.zero(q, r)
    terms = []
    divisor_data = {}
    for I in subsets:
        c = reduced.c_coefficient(I, chi, phi)
        if not I:
            terms.append((I, c))
            total = total + RationalFunctionT.constant(q, r, c)
            continue
        if c.is_zero():
            continue
        terms.append((I, c))
        part = RationalFunctionT.constant(q, r, c)
        for i in I:
            d = graph.divisor(i)
            divisor_data[i] = (d.nu, tuple(d.N))
            part = part * _geometric_factor(q, r, d.nu, d.N)
        total = total + part
    total = total * Fraction(1, q**2)
    return ZetaFunction(total, terms, q, chi, phi, divisor_data)


def candidate_poles(graph, chi=None):
    """Normalized hyperplanes N_i . s + nu_i = 0 over the divisors of the graph.

    With a character supplied, only divisors passing its compatibility
    condition contribute; the rest cannot carry a pole.
    """
    out = set()
    for d in graph.divisors:
        if not any(d.N):
            continue
        if chi is not None and not chi.gamma(d.N):
            continue
        out.add(Hyperplane.normalize(tuple(d.N), d.nu))
    return out


def actual_polar_hyperplanes(Z):
    """Hyperplane classes that survive exact cancellation.

    The assembled function is kept over the least common denominator (per
    binomial class, the maximal multiplicity across terms).  Factors are
    cancelled greedily by exact division; failure to divide is monotone
    under further exact divisions, so one pass reaches the fixpoint and the
    surviving set of normalized classes is order-independent.  Binomials in
    distinct classes share no irreducible factor, hence a class survives
    exactly when the zeta function genuinely has a pole on it.
    """
    remaining = Z.function.reduced().denominator
    return {Hyperplane.normalize(fac.N, fac.nu) for fac in remaining}


def unmask_filter(graph, candidates):
    """Drop candidate hyperplanes that no qualifying divisor realizes.

    A hyperplane is kept iff some divisor with that normalized (N, nu) is
    either a strict transform or an exceptional curve meeting at least three
    other components.
    """
    witnesses = set()
    for d in graph.divisors:
        if not any(d.N):
            continue
        if d.kind == "strict" or d.boundary_count() >= 3:
            witnesses.add(Hyperplane.normalize(tuple(d.N), d.nu))
    return {H for H in candidates if H in witnesses}


def degree_limit(Z):
    """Limit of Z as every s_j -> -infinity simultaneously, by the factor rule.

    Each geometric factor tends to (1-q), so the limit is
    q^(-2) * sum_I c_I * (1-q)^|I|.  Only meaningful for the residue-class
    localization of the zeta function, where the series has finitely many
    terms per degree in the relevant direction.
    """
    if Z.phi.kind != "origin-class":
        raise ValueError("degree limit applies to the origin-class localization")
    q = Z.p
    total = CyclotomicNumber.zero()
    for I, c in Z.terms:
        for i in I:
            _, N = Z.divisor_data[i]
            if not any(N):
                raise DivergentLimit(
                    f"divisor {i} contributes a factor with no t-dependence"
                )
        total = total + c * Fraction(1 - q) ** len(I)
    return total * Fraction(1, q**2)


def ray_limit(Z):
    """Limit of Z along t_j = Q, Q = q^m -> infinity, by degree comparison.

    Collapses the function to a single variable Q; the limit is 0 when the
    numerator degree falls short of the denominator degree, the ratio of
    leading coefficients when they agree, and divergent otherwise.
    """
    num = {}
    for exps, c in Z.function.numerator.terms.items():
        d = sum(exps)
        num[d] = num.get(d, as_cyclotomic(0)) + c
    num = {d: c for d, c in num.items() if as_cyclotomic(c)}
    den = {0: Fraction(1)}
    for fac in Z.function.denominator:
        step = sum(fac.N)
        shifted = {d + step: -c * Fraction(1, Z.p**fac.nu) for d, c in den.items()}
        for d, c in shifted.items():
            den[d] = den.get(d, Fraction(0)) + c
        den = {d: c for d, c in den.items() if c}
    if not num:
        return CyclotomicNumber.zero()
    num_deg, den_deg = max(num), max(den)
    if num_deg > den_deg:
        raise DivergentLimit("numerator dominates along the ray")
    if num_deg < den_deg:
        return CyclotomicNumber.zero()
    return as_cyclotomic(num[num_deg]) / den[den_deg]


def holomorphy_test(Z):
    """True iff the zeta function has no polar hyperplane at all."""
    return not actual_polar_hyperplanes(Z)
