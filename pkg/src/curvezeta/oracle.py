"""Brute-force power-series coefficients of the zeta function.

Enumerates residue classes of (Z/p^m)^2 with m one more than the truncation
bound, so every valuation profile inside the bound is already determined at
that modulus: a value congruent to c mod p^m with val(c) < m has the same
valuation and angular component in every lift.  The enumeration never touches
the resolution pipeline, which is the point: it validates the closed form
from the raw integral definition.

One histogram pass per (curve tuple, prime, modulus) records, for each class,
the valuation profile, the angular-component residues, and the base residue
of the point; every character and residual-weight combination is then a cheap
post-processing step over the histogram.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra.cyclotomic import CyclotomicNumber, as_cyclotomic
from .algebra.multipoly import MultiPolynomial, grlex_key
from .algebra.ratfunc import DenominatorFactor, RationalFunctionT
from .exprparse import parse_polynomial
from .reduction import CharacterTuple, ResidueField, ResidualFunction, omega_chi
from .zeta import ZetaFunction


class BudgetExceeded(Exception):
    """The requested enumeration is larger than the configured class budget."""


@dataclass(frozen=True)
class TruncationBound:
    """Bound B on each valuation coordinate; classes are taken mod p^(B+1)."""

    B: int

    def __post_init__(self):
        if self.B < 0:
            raise ValueError("truncation bound must be nonnegative")

    @property
    def modulus_exponent(self):
        return self.B + 1

    def class_count(self, p):
        return p ** (2 * self.modulus_exponent)


class CoefficientTable:
    """Exact series coefficients c_k for max(k) <= B, plus the excluded mass."""

    __slots__ = ("p", "chi", "phi", "B", "entries", "excluded_mass")

    def __init__(self, p, chi, phi, B, entries, excluded_mass):
        self.p = p
        self.chi = chi
        self.phi = phi
        self.B = B
        self.entries = dict(entries)
        self.excluded_mass = Fraction(excluded_mass)

    @property
    def r(self):
        return self.chi.r

    def coefficient(self, k):
        return self.entries.get(tuple(k), CyclotomicNumber.zero())

    def box(self):
        """All profiles with every coordinate at most B, graded-lex ordered."""
        return sorted(product(range(self.B + 1), repeat=self.r), key=grlex_key)

    def total_mass(self):
        """Sum of all table entries; a rational measure for trivial characters."""
        total = CyclotomicNumber.zero()
        for value in self.entries.values():
            total = total + value
        return total

    def __add__(self, other):
        if (
            self.p != other.p
            or self.chi != other.chi
            or self.phi.cache_key() != other.phi.cache_key()
            or self.B != other.B
        ):
            raise ValueError("tables with different parameters cannot be combined")
        entries = dict(self.entries)
        for k, v in other.entries.items():
            entries[k] = entries.get(k, CyclotomicNumber.zero()) + v
        entries = {k: v for k, v in entries.items() if not v.is_zero()}
        return CoefficientTable(
            self.p, self.chi, self.phi, self.B, entries,
            self.excluded_mass + other.excluded_mass,
        )

    def to_text(self):
        lines = [
            f"p: {self.p}",
            f"chi: {','.join(str(e) for e in self.chi.exponents)}",
            f"phi: {self.phi.label()}",
            f"bound: {self.B}",
            f"excluded-mass: {self.excluded_mass}",
        ]
        for k in self.box():
            lines.append(f"c[{','.join(str(i) for i in k)}] = {self.coefficient(k)!r}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (
            f"CoefficientTable(p={self.p}, B={self.B}, "
            f"{len(self.entries)} nonzero entries)"
        )


# ---------------------------------------------------------------------------
# enumeration


def _coerce_polynomials(F):
    out = []
    for f in F:
        out.append(parse_polynomial(f) if isinstance(f, str) else f)
    return out


def _integer_coefficients(poly, p, modulus):
    """Terms of poly as (ex, ey, c mod p^m); denominators must be p-units."""
    terms = []
    for (ex, ey), c in poly.terms.items():
        c = Fraction(c)
        if c.denominator % p == 0:
            raise ValueError(f"coefficient {c} is not integral at p={p}")
        value = c.numerator * pow(c.denominator, -1, modulus) % modulus
        terms.append((ex, ey, value))
    return terms


def _val_ac_tables(p, m):
    """Valuation and angular component of every class in Z/p^m.

    val(0) is clamped to the sentinel m, meaning "at least m": such classes
    do not determine a coefficient inside the bound.
    """
    pm = p**m
    val = [m] * pm
    ac = [0] * pm
    for v in range(1, pm):
        x, k = v, 0
        while x % p == 0:
            x //= p
            k += 1
        val[v] = k
        ac[v] = x % p
    return val, ac


def _histogram(polys, p, m, x_residues):
    """Counts of (valuation profile, ac profile, base residue) over classes.

    The x coordinate runs over classes congruent mod p to the requested
    residues; the y coordinate runs over all of Z/p^m.  For each x the curves
    collapse to one-variable polynomials evaluated by Horner's rule.
    """
    pm = p**m
    val_t, ac_t = _val_ac_tables(p, m)
    coeff_lists = [_integer_coefficients(f, p, pm) for f in polys]
    counts = {}
    y_range = range(pm)
    for a in range(pm):
        if a % p not in x_residues:
            continue
        x_res = a % p
        specialized = []
        for terms in coeff_lists:
            by_ey = {}
            for ex, ey, c in terms:
                by_ey[ey] = (by_ey.get(ey, 0) + c * pow(a, ex, pm)) % pm
            degree = max(by_ey) if by_ey else 0
            specialized.append([by_ey.get(e, 0) for e in range(degree, -1, -1)])
        for y in y_range:
            profile = []
            for desc in specialized:
                acc = 0
                for c in desc:
                    acc = (acc * y + c) % pm
                profile.append(acc)
            key = (
                tuple(val_t[v] for v in profile),
                tuple(ac_t[v] for v in profile),
                x_res,
                y % p,
            )
            counts[key] = counts.get(key, 0) + 1
    return counts


_HISTOGRAM_CACHE = {}


def _cached_histogram(polys, p, m, x_residues):
    key = (
        tuple(f.render(("x", "y")) for f in polys),
        p,
        m,
        tuple(sorted(x_residues)),
    )
    if key not in _HISTOGRAM_CACHE:
        _HISTOGRAM_CACHE[key] = _histogram(polys, p, m, x_residues)
    return _HISTOGRAM_CACHE[key]


def enumerate_coefficients(
    F,
    chi,
    phi,
    p,
    B,
    budget=10**8,
    x_residues=None,
    extra_precision=0,
):
    """Series coefficients of the zeta function over the box max(k) <= B.

    c_k = p^(-2m) * sum over classes x of (Z/p^m)^2 with valuation profile k
    of phi(x mod p) * prod_j chi_j(ac f_j(x)), with m = B + 1 (+ any extra
    precision; the result is the same by determinacy).  Restricting
    x_residues to a subset of Z/p enumerates one shard of the partition by
    x mod p; shards sum to the full table.
    """
    polys = _coerce_polynomials(F)
    if len(polys) != chi.r:
        raise ValueError("one character exponent per curve expected")
    bound = TruncationBound(B)
    m = bound.modulus_exponent + extra_precision
    if x_residues is None:
        x_residues = range(p)
    x_residues = frozenset(int(s) % p for s in x_residues)
    share = Fraction(len(x_residues), p)
    if p ** (2 * m) * share > budget:
        raise BudgetExceeded(
            f"{p}^{2 * m} classes exceed the budget of {budget}"
        )
    counts = _cached_histogram(polys, p, m, x_residues)
    field = ResidueField(p)
    measure = Fraction(1, p ** (2 * m))
    entries = {}
    excluded = Fraction(0)
    for (vals, acs, x0, y0), n in counts.items():
        if any(v >= bound.modulus_exponent for v in vals):
            excluded += n * measure
            continue
        weight = phi.weight((x0, y0), p)
        if not weight:
            continue
        value = omega_chi(acs, chi, field) * (n * measure * Fraction(weight))
        k = tuple(vals)
        entries[k] = entries.get(k, CyclotomicNumber.zero()) + value
    entries = {k: v for k, v in entries.items() if not v.is_zero()}
    return CoefficientTable(p, chi, phi, B, entries, excluded)


def enumerate_sharded(F, chi, phi, p, B, budget=10**8, shards=2):
    """Partition the x mod p residues into shards and sum the partial tables."""
    shards = max(1, min(int(shards), p))
    parts = [list(range(p))[s::shards] for s in range(shards)]
    total = None
    for residues in parts:
        table = enumerate_coefficients(
            F, chi, phi, p, B, budget=budget, x_residues=residues
        )
        total = table if total is None else total + table
    return total


# ---------------------------------------------------------------------------
# comparison and the independent monomial reference


@dataclass(frozen=True)
class ComparisonResult:
    equal: bool
    first_mismatch: tuple | None
    checked: int

    def describe(self):
        if self.equal:
            return f"equal on all {self.checked} coefficients"
        k, closed, oracle = self.first_mismatch
        return (
            f"mismatch at k={k}: closed form {closed!r} != enumeration {oracle!r}"
        )


def compare_with_closed_form(Z, table):
    """Exact coefficient-by-coefficient comparison over the table's box.

    The closed form is expanded to total degree r*B, which covers every
    profile with all coordinates at most B; profiles outside the table's box
    are not compared (the enumeration cannot see them).
    """
    if Z.p != table.p:
        raise ValueError("prime mismatch between closed form and table")
    if Z.chi != table.chi:
        raise ValueError("character mismatch between closed form and table")
    if Z.phi.cache_key() != table.phi.cache_key():
        raise ValueError("residual-function mismatch between closed form and table")
    series = Z.taylor_coefficients(table.r * table.B)
    checked = 0
    for k in table.box():
        closed = as_cyclotomic(series.get(k, Fraction(0)))
        oracle = table.coefficient(k)
        checked += 1
        if closed != oracle:
            return ComparisonResult(False, (k, closed, oracle), checked)
    return ComparisonResult(True, None, checked)


def monomial_zeta_reference(exponents, p):
    """Closed form for monomial curves f_j = x^(a_x^j) y^(a_y^j), trivial character.

    Separates variables: each variable with multiplicity row A contributes
    sum_m (p^-m - p^-(m+1)) t^(A m) = (1 - p^-1)/(1 - p^-1 t^A); a variable
    appearing in no curve contributes total mass 1.
    """
    exponents = [tuple(int(a) for a in row) for row in exponents]
    if len(exponents) != 2:
        raise ValueError("two exponent rows expected, one per variable")
    r = len(exponents[0])
    total = RationalFunctionT.constant(p, r, Fraction(1))
    for row in exponents:
        if not any(row):
            continue
        factor = RationalFunctionT(
            p,
            r,
            MultiPolynomial.constant(r, Fraction(p - 1, p)),
            (DenominatorFactor(1, row),),
        )
        total = total * factor
    chi = CharacterTuple.trivial(p, r)
    phi = ResidualFunction.unit_ball()
    return ZetaFunction(total, (), p, chi, phi, {})
