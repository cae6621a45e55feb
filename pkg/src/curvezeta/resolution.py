"""Embedded resolution of tuples of plane curves by point blow-ups over Q.

The total space after a sequence of blow-ups is covered by charts arranged in
a tree.  Each chart stores local equations for the divisor components visible
in it along with the constant making the factored pullback an identity:

    f_j composed with the blow-down  ==  const_j * prod(eq_d ^ N_d^j).

A chart's data is frozen at creation; later blow-ups only record the centers
removed from it.  The final surface is the union over charts of the chart
minus its centers.  Every intersection point of the final configuration is
discovered exactly once: strict/strict pairs in the base chart, everything
else on the axis of the newest exceptional divisor through it.

Centers are required to be Q-rational, and so are all final intersection
points; anything else raises NonRationalCenterError with the offending
minimal polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd

import sympy

from .algebra import MultiPolynomial
from .exprparse import parse_polynomial

INFINITY = "inf"

_SX, _SY = sympy.symbols("x y")
_SL = sympy.Symbol("lam")


class ResolutionError(Exception):
    pass


class NonRationalCenterError(ResolutionError):
    def __init__(self, message, minimal_polynomial):
        super().__init__(f"{message}; minimal polynomial {minimal_polynomial}")
        self.minimal_polynomial = minimal_polynomial


# ---------------------------------------------------------------------------
# sympy bridge


def _mp_to_sympy(poly, symbols):
    expr = sympy.Integer(0)
    for exp, c in poly.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(symbols, exp):
            if e:
                term *= s**e
        expr += term
    return expr


def _sympy_to_mp(expr, symbols):
    poly = sympy.Poly(expr, *symbols)
    terms = {}
    for exp, c in poly.terms():
        c = sympy.Rational(c)
        terms[tuple(int(e) for e in exp)] = Fraction(int(c.p), int(c.q))
    return MultiPolynomial(len(symbols), terms)


def _univariate_roots(poly):
    """Rational roots (with multiplicity) of a one-variable polynomial over Q,
    plus the irreducible nonlinear factors accounting for any other roots."""
    if poly.nvars != 1:
        raise ValueError("expected a univariate polynomial")
    if poly.is_constant():
        return [], []
    expr = _mp_to_sympy(poly, (_SL,))
    _, factors = sympy.factor_list(expr, _SL)
    roots, nonrational = [], []
    for fac, mult in factors:
        p = sympy.Poly(fac, _SL)
        if p.degree() == 0:
            continue
        if p.degree() == 1:
            a, b = p.all_coeffs()
            root = sympy.Rational(-b, a)
            roots.append((Fraction(int(root.p), int(root.q)), int(mult)))
        else:
            nonrational.append((str(sympy.expand(fac)), int(mult)))
    roots.sort()
    return roots, nonrational


def _solve_plane_system(polys, context):
    """All common Q-rational zeros of a zero-dimensional system in (x, y).

    Raises NonRationalCenterError when the system has solutions whose
    coordinates are not rational (their coordinates are genuine projections
    of the variety, computed through the lex elimination ideal).
    """
    exprs = [_mp_to_sympy(p, (_SX, _SY)) for p in polys if not p.is_zero()]
    if not exprs:
        raise ResolutionError("cannot solve an empty system")
    basis = sympy.groebner(exprs, _SX, _SY, order="lex")
    if basis.exprs == [sympy.Integer(1)]:
        return []
    eliminants = [g for g in basis.exprs if _SX not in g.free_symbols]
    if not eliminants:
        raise ResolutionError(f"system is not zero-dimensional while {context}")
    y_poly = _sympy_to_mp(reduce(sympy.gcd, eliminants), (_SY,))
    y_roots, y_bad = _univariate_roots(y_poly)
    if y_bad:
        raise NonRationalCenterError(
            f"non-rational point encountered while {context}", y_bad[0][0]
        )
    points = []
    for y0, _ in y_roots:
        y_val = sympy.Rational(y0.numerator, y0.denominator)
        specialized = [g.subs(_SY, y_val) for g in exprs]
        x_common = reduce(sympy.gcd, specialized)
        x_common = sympy.Poly(x_common, _SX)
        if x_common.degree() <= 0:
            continue
        x_roots, x_bad = _univariate_roots(_sympy_to_mp(x_common.as_expr(), (_SX,)))
        if x_bad:
            raise NonRationalCenterError(
                f"non-rational point encountered while {context}", x_bad[0][0]
            )
        for x0, _ in x_roots:
            points.append((x0, y0))
    points.sort()
    return points


def _factor_over_q(poly):
    """Factor a plane polynomial over Q: constant and primitive irreducible
    factors with exponents, deterministically ordered."""
    expr = _mp_to_sympy(poly, (_SX, _SY))
    const, factors = sympy.factor_list(expr, _SX, _SY)
    const = sympy.Rational(const)
    constant = Fraction(int(const.p), int(const.q))
    out = []
    for fac, mult in factors:
        mp = _sympy_to_mp(fac, (_SX, _SY))
        cont, prim = mp.content_and_primitive()
        constant *= cont ** int(mult)
        out.append((prim, int(mult)))
    out.sort(key=lambda fm: (fm[0].total_degree(), sorted(fm[0].terms), str(fm[0].sorted_terms())))
    return constant, out


def _canonical_key(poly):
    return tuple(sorted((exp, str(c)) for exp, c in poly.terms.items()))


# ---------------------------------------------------------------------------
# data model


Point = tuple


@dataclass
class Chart:
    id: int
    parent: int | None
    side: int  # 0 base, 1 first blow-up chart, 2 second
    center: Point | None  # in parent coordinates
    sub_to_base: tuple  # base coordinates as polynomials in chart coordinates
    eqs: dict  # divisor id -> primitive local equation
    consts: list  # per f_j, the constant of the factored pullback
    omega_const: Fraction
    exc_id: int | None  # exceptional divisor created together with this chart
    centers: list = field(default_factory=list)

    def axis_index(self):
        return 0 if self.side == 1 else 1

    def sub_to_parent_at(self, point):
        p1, p2 = self.center
        x, y = point
        if self.side == 1:
            return (p1 + x, p2 + x * y)
        return (p1 + x * y, p2 + y)

    def base_image(self, point):
        return (
            self.sub_to_base[0].evaluate(point),
            self.sub_to_base[1].evaluate(point),
        )


@dataclass
class Divisor:
    id: int
    kind: str  # "strict" | "exceptional"
    N: tuple
    nu: int
    plane_equation: MultiPolynomial | None = None
    base_point: Point | None = None
    birth_charts: tuple | None = None
    # final stratum data, filled when the graph is assembled
    marked_lambdas: tuple = ()
    infinity_marked: bool = False
    u_side1: list | None = None
    u_side2: list | None = None
    u_at_infinity: list | None = None
    excluded_plane_points: tuple = ()
    u_cofactors: list | None = None

    def boundary_count(self):
        """Number of points removed from the divisor by other components."""
        return len(self.marked_lambdas) + (1 if self.infinity_marked else 0)

    def euler_open(self):
        """Euler characteristic of the open stratum (exceptional = P^1)."""
        if self.kind != "exceptional":
            raise ValueError("open Euler characteristic tracked for exceptional only")
        return 2 - self.boundary_count()


@dataclass
class IntersectionPoint:
    divisors: tuple  # sorted pair of ids
    chart_id: int
    coords: Point
    plane_point: Point
    u_values: list  # value of the residual unit of each f_j at the point
    lambdas: dict  # exceptional member id -> coordinate on that divisor


@dataclass
class ResolutionGraph:
    r: int
    polynomials: list
    divisors: list
    intersections: list
    base_centers: tuple
    blowup_count: int
    charts: dict | None = None
    base_consts: list | None = None

    def divisor(self, div_id):
        return self.divisors[div_id]

    def exceptional(self):
        return [d for d in self.divisors if d.kind == "exceptional"]

    def strict(self):
        return [d for d in self.divisors if d.kind == "strict"]

    def intersections_on(self, div_id):
        return [ix for ix in self.intersections if div_id in ix.divisors]

    def divisors_over_origin(self):
        """Divisors lying over / through the base origin."""
        origin = (Fraction(0), Fraction(0))
        return self.divisors_over_point(origin)

    def divisors_over_point(self, point):
        point = (Fraction(point[0]), Fraction(point[1]))
        out = []
        for d in self.divisors:
            if d.kind == "exceptional":
                if d.base_point == point:
                    out.append(d)
            elif d.plane_equation is not None and d.plane_equation.evaluate(point) == 0:
                out.append(d)
        return out


# ---------------------------------------------------------------------------
# the resolver


class Resolver:
    def __init__(self, polys):
        if not polys:
            raise ValueError("need at least one polynomial")
        for p in polys:
            if p.nvars != 2:
                raise ValueError("plane curves live in two variables")
            if p.is_zero():
                raise ValueError("zero polynomial has no zeta data")
        self.polys = polys
        self.r = len(polys)
        self.divisors = []
        self.charts = {}
        self._init_base()

    def _init_base(self):
        registry = {}
        consts = []
        exps = []
        for f in self.polys:
            c, factors = _factor_over_q(f)
            consts.append(c)
            emap = {}
            for prim, mult in factors:
                key = _canonical_key(prim)
                if key not in registry:
                    registry[key] = prim
                emap[key] = mult
            exps.append(emap)
        ordered = sorted(
            registry.items(),
            key=lambda kv: (kv[1].total_degree(), sorted(kv[1].terms), str(kv[1].sorted_terms())),
        )
        eqs = {}
        for key, prim in ordered:
            div_id = len(self.divisors)
            N = tuple(emap.get(key, 0) for emap in exps)
            self.divisors.append(
                Divisor(div_id, "strict", N, 1, plane_equation=prim)
            )
            eqs[div_id] = prim
        base = Chart(
            id=0,
            parent=None,
            side=0,
            center=None,
            sub_to_base=(
                MultiPolynomial.variable(0, 2),
                MultiPolynomial.variable(1, 2),
            ),
            eqs=eqs,
            consts=consts,
            omega_const=Fraction(1),
            exc_id=None,
        )
        self.charts[0] = base

    # -- scanning -----------------------------------------------------------

    def _gradient(self, poly, point):
        return (poly.partial(0).evaluate(point), poly.partial(1).evaluate(point))

    def _transverse(self, g1, g2, point):
        a1, b1 = self._gradient(g1, point)
        a2, b2 = self._gradient(g2, point)
        return a1 * b2 - a2 * b1 != 0

    def _scan_base(self):
        base = self.charts[0]
        comps = sorted(base.eqs.items())
        candidates = set()
        for _, g in comps:
            sing = _solve_plane_system(
                [g, g.partial(0), g.partial(1)],
                "locating singular points of a component",
            )
            candidates.update(sing)
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                pts = _solve_plane_system(
                    [comps[i][1], comps[j][1]],
                    "intersecting two components",
                )
                candidates.update(pts)
        bad = []
        for point in sorted(candidates):
            if point in base.centers:
                continue
            through = [(d, g) for d, g in comps if g.evaluate(point) == 0]
            reasons = []
            if len(through) >= 3:
                reasons.append("triple point")
            for d, g in through:
                if self._gradient(g, point) == (Fraction(0), Fraction(0)):
                    reasons.append(f"component {d} singular")
            if len(through) == 2 and not reasons:
                if not self._transverse(through[0][1], through[1][1], point):
                    reasons.append("tangential crossing")
            if reasons:
                bad.append((0, point, ", ".join(reasons)))
        return bad

    def _axis_restriction(self, poly, axis_index):
        """Restrict to the axis {coord_axis = 0}; univariate in the other."""
        other = 1 - axis_index
        terms = {}
        for exp, c in poly.terms.items():
            if exp[axis_index] == 0:
                terms[(exp[other],)] = c
        return MultiPolynomial(1, terms)

    def _scan_exceptional(self, div):
        c1 = self.charts[div.birth_charts[0]]
        c2 = self.charts[div.birth_charts[1]]
        bad = []
        occupants = {}
        for dd, g in sorted(c1.eqs.items()):
            if dd == div.id:
                continue
            u = self._axis_restriction(g, 0)
            if u.is_zero():
                raise ResolutionError("component contains the exceptional axis")
            roots, nonrational = _univariate_roots(u)
            if nonrational:
                raise NonRationalCenterError(
                    f"component {dd} meets exceptional divisor {div.id} "
                    "at a non-rational point",
                    nonrational[0][0],
                )
            for lam, _ in roots:
                occupants.setdefault(lam, []).append((dd, g))
        for lam in sorted(occupants):
            point = (Fraction(0), lam)
            if point in c1.centers:
                continue
            occ = occupants[lam]
            reasons = []
            if len(occ) >= 2:
                reasons.append("triple point on exceptional divisor")
            for dd, g in occ:
                grad = self._gradient(g, point)
                if grad == (Fraction(0), Fraction(0)):
                    reasons.append(f"component {dd} singular")
                elif grad[1] == 0:
                    reasons.append(f"component {dd} tangent to exceptional divisor")
            if reasons:
                bad.append((c1.id, point, ", ".join(reasons)))
        origin = (Fraction(0), Fraction(0))
        if origin not in c2.centers:
            occ = [
                (dd, g)
                for dd, g in sorted(c2.eqs.items())
                if dd != div.id and g.evaluate(origin) == 0
            ]
            reasons = []
            if len(occ) >= 2:
                reasons.append("triple point on exceptional divisor")
            for dd, g in occ:
                grad = self._gradient(g, origin)
                if grad == (Fraction(0), Fraction(0)):
                    reasons.append(f"component {dd} singular")
                elif grad[0] == 0:
                    reasons.append(f"component {dd} tangent to exceptional divisor")
            if reasons:
                bad.append((c2.id, origin, ", ".join(reasons)))
        return bad

    def _scan(self):
        bad = self._scan_base()
        for div in self.divisors:
            if div.kind == "exceptional":
                bad.extend(self._scan_exceptional(div))
        bad.sort(key=lambda item: (item[0], item[1]))
        return bad

    # -- blowing up ----------------------------------------------------------

    def _blow_up(self, chart_id, point):
        chart = self.charts[chart_id]
        point = (Fraction(point[0]), Fraction(point[1]))
        if point in chart.centers:
            raise ResolutionError("center already blown up")
        chart.centers.append(point)

        mult = {}
        for dd, g in chart.eqs.items():
            mult[dd] = g.multiplicity_at(point) if g.evaluate(point) == 0 else 0
        new_id = len(self.divisors)
        N = tuple(
            sum(self.divisors[dd].N[j] * m for dd, m in mult.items())
            for j in range(self.r)
        )
        nu = 2 + sum(m * (self.divisors[dd].nu - 1) for dd, m in mult.items())
        if not any(N):
            raise ResolutionError("blow-up center does not lie on the divisor")

        child_ids = []
        for side in (1, 2):
            cid = max(self.charts) + 1
            X = MultiPolynomial.variable(0, 2)
            Y = MultiPolynomial.variable(1, 2)
            p1, p2 = point
            if side == 1:
                sub = (X + p1, X * Y + p2)
                axis = 0
            else:
                sub = (X * Y + p1, Y + p2)
                axis = 1
            eqs = {}
            contents = {}
            for dd, g in chart.eqs.items():
                h = g.substitute(list(sub))
                k = h.ord_in(axis)
                if k != mult[dd]:
                    raise ResolutionError("blow-up multiplicity bookkeeping failed")
                h = h.divide_out_power(axis, k)
                cont, prim = h.content_and_primitive()
                contents[dd] = cont
                if not prim.is_constant():
                    eqs[dd] = prim
            eqs[new_id] = MultiPolynomial.variable(axis, 2)
            consts = [
                chart.consts[j]
                * _prod(contents[dd] ** self.divisors[dd].N[j] for dd in contents)
                for j in range(self.r)
            ]
            omega_const = chart.omega_const * _prod(
                contents[dd] ** (self.divisors[dd].nu - 1) for dd in contents
            )
            sub_to_base = (
                chart.sub_to_base[0].substitute(list(sub)),
                chart.sub_to_base[1].substitute(list(sub)),
            )
            self.charts[cid] = Chart(
                id=cid,
                parent=chart_id,
                side=side,
                center=point,
                sub_to_base=sub_to_base,
                eqs=eqs,
                consts=consts,
                omega_const=omega_const,
                exc_id=new_id,
            )
            child_ids.append(cid)

        self.divisors.append(
            Divisor(
                new_id,
                "exceptional",
                N,
                nu,
                base_point=chart.base_image(point),
                birth_charts=tuple(child_ids),
            )
        )

    def run(self, max_rounds=200):
        rounds = 0
        blowups = 0
        while True:
            bad = self._scan()
            if not bad:
                break
            rounds += 1
            if rounds > max_rounds:
                raise ResolutionError("resolution did not terminate")
            chart_id, point, _ = bad[0]
            self._blow_up(chart_id, point)
            blowups += 1
        return self._build_graph(blowups)

    # -- final graph assembly -------------------------------------------------

    def _unit_values(self, chart, point, exclude):
        values = []
        for j in range(self.r):
            v = chart.consts[j]
            for dd, g in chart.eqs.items():
                if dd in exclude:
                    continue
                n = self.divisors[dd].N[j]
                if n:
                    gv = g.evaluate(point)
                    if gv == 0:
                        raise ResolutionError("unit factor vanishes at a stratum point")
                    v *= gv**n
            values.append(v)
        return values

    def _lambda_of(self, div, chart_id, point):
        """Coordinate of a point of an exceptional divisor in its birth chart."""
        chart = self.charts[chart_id]
        while chart.id not in div.birth_charts:
            point = chart.sub_to_parent_at(point)
            chart = self.charts[chart.parent]
        if chart.side == 1:
            if point[0] != 0:
                raise ResolutionError("point left the exceptional divisor")
            return point[1]
        if point[1] != 0:
            raise ResolutionError("point left the exceptional divisor")
        return INFINITY if point[0] == 0 else 1 / point[0]

    def _record_intersection(self, d1, d2, chart, point):
        pair = tuple(sorted((d1, d2)))
        lambdas = {}
        for dd in pair:
            div = self.divisors[dd]
            if div.kind == "exceptional":
                lambdas[dd] = self._lambda_of(div, chart.id, point)
        return IntersectionPoint(
            divisors=pair,
            chart_id=chart.id,
            coords=point,
            plane_point=chart.base_image(point),
            u_values=self._unit_values(chart, point, exclude=set(pair)),
            lambdas=lambdas,
        )

    def _build_graph(self, blowups):
        intersections = []
        base = self.charts[0]
        comps = sorted(base.eqs.items())
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                for point in _solve_plane_system(
                    [comps[i][1], comps[j][1]], "collecting final intersections"
                ):
                    if point in base.centers:
                        continue
                    intersections.append(
                        self._record_intersection(
                            comps[i][0], comps[j][0], base, point
                        )
                    )
        for div in self.divisors:
            if div.kind != "exceptional":
                continue
            c1 = self.charts[div.birth_charts[0]]
            c2 = self.charts[div.birth_charts[1]]
            for dd, g in sorted(c1.eqs.items()):
                if dd == div.id:
                    continue
                roots, _ = _univariate_roots(self._axis_restriction(g, 0))
                for lam, mult in roots:
                    point = (Fraction(0), lam)
                    if point in c1.centers:
                        continue
                    if mult != 1:
                        raise ResolutionError("non-transverse crossing survived")
                    intersections.append(
                        self._record_intersection(div.id, dd, c1, point)
                    )
            origin = (Fraction(0), Fraction(0))
            if origin not in c2.centers:
                occ = [
                    dd
                    for dd, g in sorted(c2.eqs.items())
                    if dd != div.id and g.evaluate(origin) == 0
                ]
                if len(occ) > 1:
                    raise ResolutionError("triple point survived resolution")
                for dd in occ:
                    intersections.append(
                        self._record_intersection(div.id, dd, c2, origin)
                    )

        # per-divisor stratum data
        for div in self.divisors:
            if div.kind == "exceptional":
                marks = []
                inf_marked = False
                for ix in intersections:
                    if div.id in ix.divisors:
                        lam = ix.lambdas[div.id]
                        if lam == INFINITY:
                            inf_marked = True
                        else:
                            marks.append(lam)
                if len(set(marks)) != len(marks):
                    raise ResolutionError("coincident marked points on a divisor")
                div.marked_lambdas = tuple(sorted(marks))
                div.infinity_marked = inf_marked
                c1 = self.charts[div.birth_charts[0]]
                c2 = self.charts[div.birth_charts[1]]
                div.u_side1 = self._axis_unit_polys(c1, div.id, 0)
                div.u_side2 = self._axis_unit_polys(c2, div.id, 1)
                div.u_at_infinity = (
                    None
                    if inf_marked
                    else [u.evaluate((Fraction(0),)) for u in div.u_side2]
                )
            else:
                excluded = [
                    c for c in base.centers if div.plane_equation.evaluate(c) == 0
                ]
                for ix in intersections:
                    if div.id in ix.divisors and ix.chart_id == 0:
                        excluded.append(ix.coords)
                div.excluded_plane_points = tuple(sorted(set(excluded)))
                div.u_cofactors = [
                    MultiPolynomial.constant(2, base.consts[j])
                    * _prod_poly(
                        (
                            g ** self.divisors[dd].N[j]
                            for dd, g in sorted(base.eqs.items())
                            if dd != div.id and self.divisors[dd].N[j]
                        ),
                        2,
                    )
                    for j in range(self.r)
                ]

        intersections.sort(key=lambda ix: (ix.divisors, ix.chart_id, ix.coords))
        graph = ResolutionGraph(
            r=self.r,
            polynomials=self.polys,
            divisors=self.divisors,
            intersections=intersections,
            base_centers=tuple(sorted(base.centers)),
            blowup_count=blowups,
            charts=self.charts,
            base_consts=list(base.consts),
        )
        validate_charts(graph)
        return graph

    def _axis_unit_polys(self, chart, div_id, axis):
        polys = []
        for j in range(self.r):
            u = MultiPolynomial.constant(1, chart.consts[j])
            for dd, g in sorted(chart.eqs.items()):
                if dd == div_id:
                    continue
                n = self.divisors[dd].N[j]
                if n:
                    u = u * self._axis_restriction(g, axis) ** n
            polys.append(u)
        return polys


def _prod(items):
    out = Fraction(1)
    for item in items:
        out *= item
    return out


def _prod_poly(items, nvars):
    out = MultiPolynomial.constant(nvars, Fraction(1))
    for item in items:
        out = out * item
    return out


# ---------------------------------------------------------------------------
# public API


def resolve(polys, names=("x", "y")):
    """Embedded resolution of the tuple of plane curves.

    Accepts MultiPolynomials in two variables or expression strings.
    """
    parsed = [
        parse_polynomial(p, names) if isinstance(p, str) else p for p in polys
    ]
    return Resolver(parsed).run()


def validate_charts(graph):
    """Check the factored pullback and 2-form bookkeeping in every chart."""
    if graph.charts is None:
        raise ValueError("graph carries no charts (external input?)")
    for chart in graph.charts.values():
        for j, f in enumerate(graph.polynomials):
            lhs = f.substitute(list(chart.sub_to_base))
            rhs = MultiPolynomial.constant(2, chart.consts[j])
            for dd, g in chart.eqs.items():
                n = graph.divisors[dd].N[j]
                if n:
                    rhs = rhs * g**n
            if lhs != rhs:
                raise ResolutionError(
                    f"factored pullback mismatch in chart {chart.id} for f_{j}"
                )
        jac = chart.sub_to_base[0].partial(0) * chart.sub_to_base[1].partial(
            1
        ) - chart.sub_to_base[0].partial(1) * chart.sub_to_base[1].partial(0)
        expected = MultiPolynomial.constant(2, chart.omega_const)
        for dd, g in chart.eqs.items():
            e = graph.divisors[dd].nu - 1
            if e:
                expected = expected * g**e
        if jac != expected:
            raise ResolutionError(f"2-form bookkeeping mismatch in chart {chart.id}")
    return True


@dataclass
class StarRelation:
    divisor: int
    component: int  # index j of the tuple entry
    alphas: list  # (neighbor divisor id, Fraction alpha)
    sum_identity: bool
    divisibility: bool

    @property
    def ok(self):
        return self.sum_identity and self.divisibility


def validate_star_relations(graph):
    """Local relations around each exceptional divisor of the final graph.

    For an exceptional divisor j with N_j^k != 0 and boundary points on
    divisors t (one per intersection point), the weights
    alpha_t = nu_t - N_t^k * nu_j / N_j^k satisfy sum(alpha_t - 1) = -2,
    and sum_t N_t^k is divisible by N_j^k.
    """
    reports = []
    for div in graph.exceptional():
        touching = graph.intersections_on(div.id)
        for k in range(graph.r):
            if not div.N[k]:
                continue
            alphas = []
            for ix in touching:
                other = ix.divisors[0] if ix.divisors[1] == div.id else ix.divisors[1]
                od = graph.divisor(other)
                alpha = od.nu - Fraction(od.N[k] * div.nu, div.N[k])
                alphas.append((other, alpha))
            total = sum(a for _, a in alphas)
            sum_ok = total - len(alphas) == -2
            div_ok = sum(graph.divisor(o).N[k] for o, _ in alphas) % div.N[k] == 0
            reports.append(StarRelation(div.id, k, alphas, sum_ok, div_ok))
    return reports


# ---------------------------------------------------------------------------
# strata

EMPTY = ()


@dataclass
class Stratum:
    ids: tuple  # divisor ids, 0 <= len <= 2
    kind: str  # "empty" | "exceptional" | "strict" | "pair"
    payload: object = None


def strata(graph):
    """All strata of the divisor configuration, coarsest first."""
    out = [Stratum(EMPTY, "empty")]
    for div in graph.divisors:
        out.append(Stratum((div.id,), div.kind, div))
    for ix in graph.intersections:
        out.append(Stratum(ix.divisors, "pair", ix))
    return out


# ---------------------------------------------------------------------------
# dual graph export


def export_dual_graph(graph):
    """Deterministic DOT rendering of the dual intersection graph."""
    lines = ["graph resolution {"]
    for div in graph.divisors:
        n = ",".join(str(n) for n in div.N)
        shape = "circle" if div.kind == "exceptional" else "box"
        lines.append(
            f'  d{div.id} [label="{div.kind[0].upper()}{div.id} '
            f'N=({n}) nu={div.nu}" shape={shape}];'
        )
    for ix in graph.intersections:
        a, b = ix.divisors
        lines.append(f"  d{a} -- d{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
