"""Reduction of a resolution modulo a prime p and exact stratum counting.

The counting layer works entirely over F_p: divisor strata are enumerated
point by point, each point carrying the residues of the unit cofactors
u_1..u_r of the input polynomials.  Character sums are then exact elements
of Q(zeta_{p-1}), assembled from a chi-independent histogram of unit
profiles so that sweeping over many character tuples costs nothing extra.

A prime is accepted only if the configuration stays simple normal crossings
with the same combinatorics modulo p: unit denominators, distinct marked
points, transverse crossings, smooth strict transforms, multiplicities prime
to p.  Violations raise BadPrime; hidden degenerations that only surface
during counting raise UnitVanishes.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from itertools import product

import sympy

from .algebra import CyclotomicNumber
from .resolution import INFINITY


class ReductionError(Exception):
    pass


class BadPrime(ReductionError):
    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class UnitVanishes(ReductionError):
    pass


class MissingGraphData(ReductionError):
    pass


# ---------------------------------------------------------------------------
# residue arithmetic helpers


def _red_frac(x, p):
    x = Fraction(x)
    if x.denominator % p == 0:
        raise BadPrime(f"denominator of {x} is not a unit modulo {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def _red_point(point, p):
    return tuple(_red_frac(c, p) for c in point)


def _red_poly2(poly, p):
    out = {}
    for exp, c in poly.terms.items():
        v = _red_frac(c, p)
        if v:
            out[exp] = v
    return out


def _red_poly1(poly, p):
    """Univariate polynomial as an ascending coefficient list mod p."""
    deg = max((exp[0] for exp in poly.terms), default=0)
    coeffs = [0] * (deg + 1)
    for exp, c in poly.terms.items():
        coeffs[exp[0]] = _red_frac(c, p)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _eval2(red, a, b, p):
    total = 0
    for (e1, e2), c in red.items():
        total += c * pow(a, e1, p) * pow(b, e2, p)
    return total % p


def _partial2(red, index, p):
    out = {}
    for exp, c in red.items():
        e = exp[index]
        if e:
            new = list(exp)
            new[index] = e - 1
            v = c * e % p
            if v:
                out[tuple(new)] = v
    return out


def _horner(coeffs, x, p):
    total = 0
    for c in reversed(coeffs):
        total = (total * x + c) % p
    return total


def _ord_at(coeffs, lam, p):
    """Multiplicity of lam as a root of the mod-p polynomial.

    Returns a huge sentinel for the identically-zero polynomial so callers
    comparing against an expected finite order reject it.
    """
    coeffs = [c % p for c in coeffs]
    order = 0
    while True:
        if not any(coeffs):
            return 10**9
        # synthetic division by (X - lam): b_i = c_i + lam*b_{i+1}
        b = [0] * len(coeffs)
        b[-1] = coeffs[-1]
        for i in range(len(coeffs) - 2, -1, -1):
            b[i] = (coeffs[i] + lam * b[i + 1]) % p
        if b[0] != 0:
            return order
        order += 1
        coeffs = b[1:]
        if not coeffs:
            return order


def _ord_at_zero(coeffs):
    for i, c in enumerate(coeffs):
        if c:
            return i
    return len(coeffs)


# ---------------------------------------------------------------------------
# residue field with discrete logarithms


class ResidueField:
    """F_p with a fixed generator (smallest primitive root) and dlog table."""

    __slots__ = ("p", "generator", "_dlog")

    def __init__(self, p):
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.generator = int(sympy.primitive_root(p)) if p > 2 else 1
        self._dlog = [None] * p
        value = 1
        for k in range(p - 1):
            self._dlog[value] = k
            value = value * self.generator % p
        self._dlog[1] = 0

    def dlog(self, a):
        a %= self.p
        if a == 0:
            raise UnitVanishes("discrete logarithm of zero")
        return self._dlog[a]


# ---------------------------------------------------------------------------
# character tuples


class CharacterTuple:
    """Tuple of multiplicative characters of F_p^*, one per input polynomial,
    encoded by exponents e_j against the fixed generator:
    chi_j(g^k) = zeta_{p-1}^{e_j k}."""

    __slots__ = ("p", "exponents")

    def __init__(self, p, exponents):
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        exponents = tuple(int(e) for e in exponents)
        if any(e < 0 or e > p - 2 for e in exponents):
            raise ValueError(f"character exponents must lie in 0..{p - 2}")
        self.p = p
        self.exponents = exponents

    @classmethod
    def trivial(cls, p, r):
        return cls(p, (0,) * r)

    @classmethod
    def all_tuples(cls, p, r):
        for exps in product(range(p - 1), repeat=r):
            yield cls(p, exps)

    @property
    def r(self):
        return len(self.exponents)

    def orders(self):
        return tuple((self.p - 1) // gcd(e, self.p - 1) for e in self.exponents)

    def order(self):
        out = 1
        for d in self.orders():
            out = out * d // gcd(out, d)
        return out

    def is_trivial(self):
        return all(e == 0 for e in self.exponents)

    def gamma(self, N):
        """Whether prod_j chi_j^{N^j} is the trivial character."""
        return sum(e * n for e, n in zip(self.exponents, N)) % (self.p - 1) == 0

    def exponent_of_profile(self, dlogs):
        return sum(e * d for e, d in zip(self.exponents, dlogs)) % (self.p - 1)

    def finite_order_exponents(self):
        """Image in (Q/Z)^r: a_j = e_j/(p-1) reduced to [0, 1)."""
        return tuple(Fraction(e, self.p - 1) % 1 for e in self.exponents)

    def __eq__(self, other):
        return (
            isinstance(other, CharacterTuple)
            and self.p == other.p
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.p, self.exponents))

    def __repr__(self):
        return f"CharacterTuple(p={self.p}, exponents={self.exponents})"


def gamma_condition(N, chi):
    return chi.gamma(N)


def omega_chi(units, chi, field):
    """prod_j chi_j(u_j) for the unit residues at a stratum point."""
    if len(units) != chi.r:
        raise ValueError("unit vector length does not match character tuple")
    dlogs = []
    for u in units:
        if u % field.p == 0:
            raise UnitVanishes("unit factor vanishes modulo p")
        dlogs.append(field.dlog(u))
    k = chi.exponent_of_profile(dlogs)
    return CyclotomicNumber.root_of_unity(field.p - 1, k)


# ---------------------------------------------------------------------------
# residual weight functions


class ResidualFunction:
    """Rational-valued weight on residue classes of Z_p^2 (level 1)."""

    __slots__ = ("kind", "table", "table_p")

    def __init__(self, kind, table=None, table_p=None):
        if kind not in ("unit-ball", "origin-class", "table"):
            raise ValueError(f"unknown residual function kind {kind!r}")
        if kind == "table":
            if table is None or table_p is None:
                raise ValueError("table residual function needs weights and p")
            table = {
                (int(a) % table_p, int(b) % table_p): Fraction(w)
                for (a, b), w in table.items()
            }
        self.kind = kind
        self.table = table
        self.table_p = table_p

    @classmethod
    def unit_ball(cls):
        """Constant 1: the characteristic function of Z_p^2."""
        return cls("unit-ball")

    @classmethod
    def origin_class(cls):
        """Indicator of the residue class of the origin, (pZ_p)^2."""
        return cls("origin-class")

    @classmethod
    def from_table(cls, weights, p):
        return cls("table", table=weights, table_p=p)

    def weight(self, point, p):
        if self.kind == "unit-ball":
            return Fraction(1)
        if self.kind == "origin-class":
            return Fraction(1) if point == (0, 0) else Fraction(0)
        if p != self.table_p:
            raise ValueError(f"residual table was built for p={self.table_p}, not p={p}")
        return self.table.get(point, Fraction(0))

    def cache_key(self):
        if self.kind == "table":
            return ("table", tuple(sorted(self.table.items())))
        return (self.kind,)

    def label(self):
        return self.kind

    def __repr__(self):
        return f"ResidualFunction({self.kind!r})"


# ---------------------------------------------------------------------------
# the reduced graph


class ReducedGraph:
    """A resolution graph together with its exact mod-p counting data."""

    def __init__(self, graph, p):
        if not sympy.isprime(p):
            raise BadPrime(f"{p} is not prime")
        self.graph = graph
        self.p = p
        self._require_data()
        self._check_structure()
        self._check_tameness()
        self.field = ResidueField(p)
        self._reduce_all()
        self._check_combinatorics()
        self._hist_cache = {}

    # -- validation ---------------------------------------------------------

    def _require_data(self):
        g = self.graph
        if not g.polynomials or any(f is None for f in g.polynomials):
            raise MissingGraphData("graph carries no input polynomials")
        for d in g.divisors:
            if d.kind == "exceptional":
                if d.u_side1 is None or d.u_side2 is None or d.base_point is None:
                    raise MissingGraphData(
                        f"divisor {d.id} lacks stratum data (combinatorial-only graph?)"
                    )
            else:
                if d.plane_equation is None or d.u_cofactors is None:
                    raise MissingGraphData(
                        f"divisor {d.id} lacks stratum data (combinatorial-only graph?)"
                    )

    def _check_structure(self):
        for d in self.graph.divisors:
            if d.nu < 1:
                raise BadPrime(f"divisor {d.id} has degenerate nu = {d.nu}")
            if not any(d.N):
                raise BadPrime(f"divisor {d.id} has zero multiplicity vector")

    def _check_tameness(self):
        p = self.p
        for d in self.graph.divisors:
            for n in d.N:
                if n and n % p == 0:
                    raise BadPrime(f"tameness: {p} | N={n} on divisor {d.id}")

    # -- reduction ----------------------------------------------------------

    def _reduce_all(self):
        g, p = self.graph, self.p
        self.red_polynomials = [_red_poly2(f, p) for f in g.polynomials]
        self.red_base_consts = (
            None
            if g.base_consts is None
            else [_red_frac(c, p) for c in g.base_consts]
        )
        self.div_data = {}
        for d in g.divisors:
            if d.kind == "exceptional":
                marks = [_red_frac(lam, p) for lam in d.marked_lambdas]
                data = {
                    "marks": marks,
                    "inf_marked": d.infinity_marked,
                    "u1": [_red_poly1(u, p) for u in d.u_side1],
                    "u2": [_red_poly1(u, p) for u in d.u_side2],
                    "u_inf": None
                    if d.u_at_infinity is None
                    else [_red_frac(u, p) for u in d.u_at_infinity],
                    "base_point": _red_point(d.base_point, p),
                }
            else:
                red_eq = _red_poly2(d.plane_equation, p)
                if not red_eq or all(e == (0, 0) for e in red_eq):
                    raise BadPrime(
                        f"component {d.id} reduces to a constant modulo {p}"
                    )
                data = {
                    "eq": red_eq,
                    "grad": (_partial2(red_eq, 0, p), _partial2(red_eq, 1, p)),
                    "excluded": [_red_point(x, p) for x in d.excluded_plane_points],
                    "cofactors": [_red_poly2(u, p) for u in d.u_cofactors],
                }
            self.div_data[d.id] = data
        self.ix_data = []
        for ix in g.intersections:
            self.ix_data.append(
                {
                    "u": [_red_frac(u, p) for u in ix.u_values],
                    "plane_point": _red_point(ix.plane_point, p),
                }
            )

    # -- good-reduction combinatorics ----------------------------------------

    def _check_combinatorics(self):
        g, p = self.graph, self.p
        # marked points stay distinct on each exceptional divisor
        for d in g.divisors:
            if d.kind != "exceptional":
                continue
            data = self.div_data[d.id]
            marks = list(data["marks"]) + ([INFINITY] if data["inf_marked"] else [])
            if len(set(marks)) != len(marks):
                raise BadPrime(
                    f"marked points on divisor {d.id} collide modulo {p}"
                )
        # excluded points stay distinct on each strict component
        for d in g.divisors:
            if d.kind != "strict":
                continue
            excl = self.div_data[d.id]["excluded"]
            if len(set(excl)) != len(excl):
                raise BadPrime(
                    f"special points on component {d.id} collide modulo {p}"
                )
        # base-level special points stay distinct
        base_special = [_red_point(c, p) for c in g.base_centers]
        base_special += [
            _red_point(ix.coords, p)
            for ix in g.intersections
            if ix.chart_id == 0 and ix.coords is not None
        ]
        if len(set(base_special)) != len(base_special):
            raise BadPrime(f"base special points collide modulo {p}")
        # strict components stay smooth away from the excluded special points
        # (at a blown-up center the plane curve may be singular; the strict
        # transform's behavior there is covered by the crossing-order checks)
        self._strict_points = {}
        for d in g.divisors:
            if d.kind != "strict":
                continue
            data = self.div_data[d.id]
            excluded = set(data["excluded"])
            points = []
            for a in range(p):
                for b in range(p):
                    if _eval2(data["eq"], a, b, p) == 0:
                        points.append((a, b))
                        if (a, b) in excluded:
                            continue
                        ga = _eval2(data["grad"][0], a, b, p)
                        gb = _eval2(data["grad"][1], a, b, p)
                        if ga == 0 and gb == 0:
                            raise BadPrime(
                                f"component {d.id} is singular at {(a, b)} modulo {p}"
                            )
            self._strict_points[d.id] = points
        # strict/strict crossings stay transverse
        for ix, red in zip(g.intersections, self.ix_data):
            if ix.chart_id != 0 or ix.coords is None:
                continue
            m1, m2 = ix.divisors
            pt = _red_point(ix.coords, p)
            d1, d2 = self.div_data[m1], self.div_data[m2]
            j11 = _eval2(d1["grad"][0], *pt, p)
            j12 = _eval2(d1["grad"][1], *pt, p)
            j21 = _eval2(d2["grad"][0], *pt, p)
            j22 = _eval2(d2["grad"][1], *pt, p)
            if (j11 * j22 - j12 * j21) % p == 0:
                raise BadPrime(
                    f"crossing of components {m1}, {m2} degenerates modulo {p}"
                )
        # the unit restrictions keep their exact vanishing orders: any mod-p
        # tangency, collision, or extra crossing inflates the order of some
        # u_j at a marked point, and any hidden visitor zeroes a u_j at an
        # unmarked one
        for d in g.divisors:
            if d.kind != "exceptional":
                continue
            data = self.div_data[d.id]
            marked = set(data["marks"])
            for j in range(g.r):
                for lam in d.marked_lambdas:
                    char0 = d.u_side1[j].translate((lam,)).ord_in(0)
                    modp = _ord_at(data["u1"][j], _red_frac(lam, p), p)
                    if modp != char0:
                        raise BadPrime(
                            f"crossing at lambda={lam} on divisor {d.id} "
                            f"degenerates modulo {p} (order {modp} != {char0})"
                        )
                if d.infinity_marked:
                    char0 = d.u_side2[j].ord_in(0)
                    modp = _ord_at_zero(data["u2"][j])
                    if modp != char0:
                        raise BadPrime(
                            f"crossing at infinity on divisor {d.id} "
                            f"degenerates modulo {p} (order {modp} != {char0})"
                        )
                for lam in range(p):
                    if lam in marked:
                        continue
                    if _horner(data["u1"][j], lam, p) == 0:
                        raise BadPrime(
                            f"hidden crossing at lambda={lam} on divisor {d.id} "
                            f"modulo {p}"
                        )
                if not data["inf_marked"] and data["u_inf"][j] == 0:
                    raise BadPrime(
                        f"hidden crossing at infinity on divisor {d.id} modulo {p}"
                    )

    # -- strata ---------------------------------------------------------------

    def stratum_keys(self):
        keys = [("empty",)]
        keys += [("div", d.id) for d in self.graph.divisors]
        keys += [("pair", i) for i in range(len(self.graph.intersections))]
        return keys

    def _profiles(self, key, phi):
        """Histogram of unit-residue profiles with residual weights."""
        cache_key = (key, phi.cache_key())
        if cache_key in self._hist_cache:
            return self._hist_cache[cache_key]
        p = self.p
        hist = {}

        def add(profile, weight):
            if weight:
                hist[profile] = hist.get(profile, Fraction(0)) + weight

        if key[0] == "empty":
            for a in range(p):
                for b in range(p):
                    vals = []
                    for red in self.red_polynomials:
                        v = _eval2(red, a, b, p)
                        if v == 0:
                            break
                        vals.append(v)
                    else:
                        add(tuple(vals), phi.weight((a, b), p))
        elif key[0] == "div":
            div = self.graph.divisor(key[1])
            data = self.div_data[key[1]]
            if div.kind == "exceptional":
                w = phi.weight(data["base_point"], p)
                marked = set(data["marks"])
                for lam in range(p):
                    if lam in marked:
                        continue
                    units = []
                    for j in range(self.graph.r):
                        u = _horner(data["u1"][j], lam, p)
                        if u == 0:
                            raise UnitVanishes(
                                f"unit vanishes at lambda={lam} on divisor {div.id} "
                                f"(hidden crossing modulo {p})"
                            )
                        units.append(u)
                    add(tuple(units), w)
                if not data["inf_marked"]:
                    units = []
                    for j in range(self.graph.r):
                        u = data["u_inf"][j]
                        if u == 0:
                            raise UnitVanishes(
                                f"unit vanishes at infinity on divisor {div.id} "
                                f"(hidden crossing modulo {p})"
                            )
                        units.append(u)
                    add(tuple(units), w)
            else:
                excluded = set(data["excluded"])
                for pt in self._strict_points[div.id]:
                    if pt in excluded:
                        continue
                    units = []
                    for j in range(self.graph.r):
                        u = _eval2(data["cofactors"][j], *pt, p)
                        if u == 0:
                            raise UnitVanishes(
                                f"unit vanishes at {pt} on component {div.id} "
                                f"(hidden crossing modulo {p})"
                            )
                        units.append(u)
                    add(tuple(units), phi.weight(pt, p))
        elif key[0] == "pair":
            red = self.ix_data[key[1]]
            units = []
            for u in red["u"]:
                if u == 0:
                    raise UnitVanishes(
                        f"unit vanishes at intersection {key[1]} modulo {p}"
                    )
                units.append(u)
            add(tuple(units), phi.weight(red["plane_point"], p))
        else:
            raise ValueError(f"unknown stratum key {key!r}")

        self._hist_cache[cache_key] = hist
        return hist

    def character_sum(self, key, chi, phi):
        """Sum of residual weight times Omega_chi over a single stratum."""
        hist = self._profiles(key, phi)
        by_exponent = {}
        for profile, weight in hist.items():
            k = chi.exponent_of_profile([self.field.dlog(u) for u in profile])
            by_exponent[k] = by_exponent.get(k, Fraction(0)) + weight
        total = CyclotomicNumber.zero()
        for k, weight in sorted(by_exponent.items()):
            total = total + CyclotomicNumber.root_of_unity(self.p - 1, k) * weight
        return total

    def c_coefficient(self, I, chi, phi):
        """c_{I,chi,Phi}: weighted point count of the open stratum of I."""
        I = tuple(sorted(I))
        if len(I) > 2:
            raise ValueError("strata of more than two divisors do not occur (SNC)")
        if len(set(I)) != len(I):
            raise ValueError("divisor set I must not repeat entries")
        for i in I:
            if not chi.gamma(self.graph.divisor(i).N):
                raise ValueError(
                    f"gamma condition fails on divisor {i}; "
                    "the character sum is not chart-independent"
                )
        if len(I) == 0:
            return self.character_sum(("empty",), chi, phi)
        if len(I) == 1:
            return self.character_sum(("div", I[0]), chi, phi)
        total = CyclotomicNumber.zero()
        for idx, ix in enumerate(self.graph.intersections):
            if tuple(sorted(ix.divisors)) == I:
                total = total + self.character_sum(("pair", idx), chi, phi)
        return total

    def count_stratum_points(self, key):
        """|E_I^o(F_p)| for a stratum key, by enumeration."""
        hist = self._profiles(key, ResidualFunction.unit_ball())
        total = sum(hist.values(), Fraction(0))
        if total.denominator != 1:
            raise RuntimeError("point count must be an integer")
        return int(total)

    def surface_point_count(self):
        """|Y(F_p)|: each blow-up of a rational point adds p points."""
        n_exc = len(self.graph.exceptional())
        return self.p**2 + self.p * n_exc

    def partition_check(self):
        """The strata partition the surface's F_p points."""
        total = sum(self.count_stratum_points(key) for key in self.stratum_keys())
        return total == self.surface_point_count()


def reduce_mod_p(graph, p):
    return ReducedGraph(graph, p)


def c_coefficient(I, chi, phi, reduced):
    return reduced.c_coefficient(I, chi, phi)


def count_stratum_points(reduced, key):
    return reduced.count_stratum_points(key)
