"""Sparse multivariate polynomials with exact coefficients.

Coefficients may be ints, fractions.Fraction, or any ring element supporting
+, -, *, == and truthiness (zero is falsy).  Exponent vectors are tuples of
nonnegative ints.  The monomial order used throughout is graded lexicographic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class NotDivisibleError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


def _coerce(value):
    if isinstance(value, int):
        return Fraction(value)
    return value


def grlex_key(exponents):
    """Sort key realizing graded lex order: total degree first, then lex."""
    return (sum(exponents), exponents)


class MultiPolynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                coeff = _coerce(coeff)
                if coeff:
                    clean[tuple(exp)] = coeff
        self.terms = clean

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, value):
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, index, nvars):
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exponents, coeff=1):
        return cls(len(exponents), {tuple(exponents): coeff})

    # ------------------------------------------------------------------
    # predicates and inspection

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(exp) for exp in self.terms)

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms[(0,) * self.nvars]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    def deg_in(self, i):
        if not self.terms:
            return -1
        return max(exp[i] for exp in self.terms)

    def ord_in(self, i):
        """Order of vanishing along the coordinate hyperplane x_i = 0."""
        if not self.terms:
            raise ValueError("order of the zero polynomial is undefined")
        return min(exp[i] for exp in self.terms)

    def leading_term(self):
        """(exponent, coefficient) maximal under graded lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def coefficient(self, exponents):
        return self.terms.get(tuple(exponents), Fraction(0))

    def sorted_terms(self):
        """Terms sorted graded-lex descending, for deterministic output."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    # ------------------------------------------------------------------
    # ring operations

    def _wrap(self, other):
        if isinstance(other, MultiPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        return MultiPolynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._wrap(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            acc = terms.get(exp)
            acc = c if acc is None else acc + c
            if acc:
                terms[exp] = acc
            elif exp in terms:
                del terms[exp]
        out = MultiPolynomial(self.nvars)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPolynomial(self.nvars)
        out.terms = {exp: -c for exp, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        other = self._wrap(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc = terms.get(exp)
                acc = prod if acc is None else acc + prod
                if acc:
                    terms[exp] = acc
                elif exp in terms:
                    del terms[exp]
        out = MultiPolynomial(self.nvars)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPolynomial.constant(self.nvars, Fraction(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPolynomial):
            try:
                other = self._wrap(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    __hash__ = None

    # ------------------------------------------------------------------
    # calculus and substitution

    def partial(self, i):
        terms = {}
        for exp, c in self.terms.items():
            if exp[i]:
                new = list(exp)
                new[i] -= 1
                terms[tuple(new)] = c * exp[i]
        return MultiPolynomial(self.nvars, terms)

    def evaluate(self, values):
        """Evaluate at a point; values live in any commutative ring."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        total = None
        for exp, c in self.terms.items():
            prod = c
            for v, e in zip(values, exp):
                if e:
                    prod = prod * v**e
            total = prod if total is None else total + prod
        return Fraction(0) if total is None else total

    def substitute(self, polys):
        """Compose: replace variable i by polys[i]."""
        if len(polys) != self.nvars:
            raise ValueError("wrong number of substitution polynomials")
        nvars = polys[0].nvars
        powers = [{0: MultiPolynomial.constant(nvars, Fraction(1))} for _ in polys]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * polys[i]
            return cache[e]

        result = MultiPolynomial.zero(nvars)
        for exp, c in self.terms.items():
            piece = MultiPolynomial.constant(nvars, c)
            for i, e in enumerate(exp):
                if e:
                    piece = piece * power(i, e)
            result = result + piece
        return result

    def translate(self, point):
        """Shift coordinates so that `point` becomes the origin."""
        subs = [
            MultiPolynomial.variable(i, self.nvars) + Fraction(point[i])
            for i in range(self.nvars)
        ]
        return self.substitute(subs)

    def multiplicity_at(self, point):
        shifted = self.translate(point)
        if shifted.is_zero():
            raise ValueError("multiplicity of the zero polynomial is undefined")
        return min(sum(exp) for exp in shifted.terms)

    def divide_out_power(self, i, k):
        """Exact division by x_i^k."""
        if k == 0:
            return self
        terms = {}
        for exp, c in self.terms.items():
            if exp[i] < k:
                raise NotDivisibleError(f"term {exp} not divisible by x_{i}^{k}")
            new = list(exp)
            new[i] -= k
            terms[tuple(new)] = c
        return MultiPolynomial(self.nvars, terms)

    def truncate_total_degree(self, bound):
        return MultiPolynomial(
            self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= bound}
        )

    def map_coefficients(self, fn):
        return MultiPolynomial(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    # ------------------------------------------------------------------
    # exact division

    def exact_div(self, divisor):
        """Quotient self / divisor, or raise NotDivisibleError.

        Single-divisor reduction under graded lex order.  A singleton set is a
        Groebner basis, so the remainder vanishes iff divisor | self.
        """
        divisor = self._wrap(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_exp, lead_coeff = divisor.leading_term()
        quotient = MultiPolynomial.zero(self.nvars)
        rem = self
        while not rem.is_zero():
            rexp, rcoeff = rem.leading_term()
            if any(a < b for a, b in zip(rexp, lead_exp)):
                raise NotDivisibleError("nonzero remainder in exact division")
            qexp = tuple(a - b for a, b in zip(rexp, lead_exp))
            qcoeff = rcoeff / lead_coeff
            qterm = MultiPolynomial.monomial(qexp, qcoeff)
            quotient = quotient + qterm
            rem = rem - qterm * divisor
        return quotient

    def divides(self, other):
        try:
            other.exact_div(self)
            return True
        except NotDivisibleError:
            return False

    # ------------------------------------------------------------------
    # normalization over Q

    def content_and_primitive(self):
        """Write self = c * g with g integer-coefficient, primitive, and
        positive leading (graded lex) coefficient.  Coefficients must be
        Fractions."""
        if self.is_zero():
            raise ValueError("zero polynomial has no primitive part")
        denom_lcm = 1
        for c in self.terms.values():
            denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
        numer_gcd = 0
        for c in self.terms.values():
            numer_gcd = gcd(numer_gcd, (c * denom_lcm).numerator)
        content = Fraction(numer_gcd, denom_lcm)
        _, lead = self.leading_term()
        if lead < 0:
            content = -content
        return content, self.map_coefficients(lambda c: c / content)

    # ------------------------------------------------------------------
    # rendering

    def render(self, names):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        out = parts[0]
        for part in parts[1:]:
            out += part if part.startswith("-") else "+" + part
        return out

    def __repr__(self):
        names = ["x", "y", "z"][: self.nvars]
        if self.nvars > 3:
            names = [f"x{i}" for i in range(self.nvars)]
        return f"MultiPolynomial({self.render(names)})"


def poly_gcd_univariate(a, b):
    """Monic gcd of two univariate polynomials over Q (Euclid)."""
    if a.nvars != 1 or b.nvars != 1:
        raise ValueError("univariate gcd needs one-variable polynomials")
    while not b.is_zero():
        a, b = b, _poly_rem(a, b)
    if a.is_zero():
        return a
    _, lead = a.leading_term()
    return a.map_coefficients(lambda c: c / lead)


def _poly_rem(a, b):
    lexp, lcoeff = b.leading_term()
    rem = a
    while not rem.is_zero():
        rexp, rcoeff = rem.leading_term()
        if rexp[0] < lexp[0]:
            break
        q = MultiPolynomial.monomial((rexp[0] - lexp[0],), rcoeff / lcoeff)
        rem = rem - q * b
    return rem
