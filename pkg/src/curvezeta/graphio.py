"""JSON interchange for resolution graphs.

The format stores exact rationals as strings and polynomials as sorted term
lists, so serialization is deterministic and round-trips losslessly.  Charts
are deliberately not serialized; a loaded graph carries everything the
counting, zeta, and monodromy layers need.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import MultiPolynomial
from .resolution import INFINITY, Divisor, IntersectionPoint, ResolutionGraph

FORMAT = "curvezeta-graph/1"


class GraphFormatError(ValueError):
    pass


def _frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_frac(s):
    return Fraction(s)


def _poly_obj(poly):
    if poly is None:
        return None
    return {
        "nvars": poly.nvars,
        "terms": [[list(exp), _frac_str(c)] for exp, c in poly.sorted_terms()],
    }


def _parse_poly(obj):
    if obj is None:
        return None
    terms = {tuple(exp): _parse_frac(c) for exp, c in obj["terms"]}
    return MultiPolynomial(obj["nvars"], terms)


def _point_obj(point):
    if point is None:
        return None
    return [_frac_str(c) for c in point]


def _parse_point(obj):
    if obj is None:
        return None
    return tuple(_parse_frac(c) for c in obj)


def _lambda_obj(lam):
    return INFINITY if lam == INFINITY else _frac_str(lam)


def _parse_lambda(obj):
    return INFINITY if obj == INFINITY else _parse_frac(obj)


def graph_to_json(graph):
    divisors = []
    for d in graph.divisors:
        divisors.append(
            {
                "id": d.id,
                "kind": d.kind,
                "N": list(d.N),
                "nu": d.nu,
                "plane_equation": _poly_obj(d.plane_equation),
                "base_point": _point_obj(d.base_point),
                "marked_lambdas": [_frac_str(x) for x in d.marked_lambdas],
                "infinity_marked": d.infinity_marked,
                "u_side1": None if d.u_side1 is None else [_poly_obj(u) for u in d.u_side1],
                "u_side2": None if d.u_side2 is None else [_poly_obj(u) for u in d.u_side2],
                "u_at_infinity": None
                if d.u_at_infinity is None
                else [_frac_str(u) for u in d.u_at_infinity],
                "excluded_plane_points": [_point_obj(x) for x in d.excluded_plane_points],
                "u_cofactors": None
                if d.u_cofactors is None
                else [_poly_obj(u) for u in d.u_cofactors],
            }
        )
    intersections = []
    for ix in graph.intersections:
        intersections.append(
            {
                "divisors": list(ix.divisors),
                "chart_id": ix.chart_id,
                "coords": _point_obj(ix.coords),
                "plane_point": _point_obj(ix.plane_point),
                "u_values": [_frac_str(u) for u in ix.u_values],
                "lambdas": {str(k): _lambda_obj(v) for k, v in sorted(ix.lambdas.items())},
            }
        )
    return {
        "format": FORMAT,
        "r": graph.r,
        "polynomials": [_poly_obj(f) for f in graph.polynomials],
        "blowup_count": graph.blowup_count,
        "base_centers": [_point_obj(c) for c in graph.base_centers],
        "base_consts": None
        if graph.base_consts is None
        else [_frac_str(c) for c in graph.base_consts],
        "divisors": divisors,
        "intersections": intersections,
    }


def graph_from_json(data):
    if data.get("format") != FORMAT:
        raise GraphFormatError(f"unsupported graph format {data.get('format')!r}")
    divisors = []
    for obj in data["divisors"]:
        divisors.append(
            Divisor(
                id=obj["id"],
                kind=obj["kind"],
                N=tuple(obj["N"]),
                nu=obj["nu"],
                plane_equation=_parse_poly(obj.get("plane_equation")),
                base_point=_parse_point(obj.get("base_point")),
                birth_charts=None,
                marked_lambdas=tuple(_parse_frac(x) for x in obj.get("marked_lambdas", [])),
                infinity_marked=obj.get("infinity_marked", False),
                u_side1=None
                if obj.get("u_side1") is None
                else [_parse_poly(u) for u in obj["u_side1"]],
                u_side2=None
                if obj.get("u_side2") is None
                else [_parse_poly(u) for u in obj["u_side2"]],
                u_at_infinity=None
                if obj.get("u_at_infinity") is None
                else [_parse_frac(u) for u in obj["u_at_infinity"]],
                excluded_plane_points=tuple(
                    _parse_point(x) for x in obj.get("excluded_plane_points", [])
                ),
                u_cofactors=None
                if obj.get("u_cofactors") is None
                else [_parse_poly(u) for u in obj["u_cofactors"]],
            )
        )
    if [d.id for d in divisors] != list(range(len(divisors))):
        raise GraphFormatError("divisor ids must be 0..n-1 in order")
    intersections = []
    for obj in data["intersections"]:
        intersections.append(
            IntersectionPoint(
                divisors=tuple(obj["divisors"]),
                chart_id=obj.get("chart_id", -1),
                coords=_parse_point(obj.get("coords")),
                plane_point=_parse_point(obj.get("plane_point")),
                u_values=[_parse_frac(u) for u in obj.get("u_values", [])],
                lambdas={int(k): _parse_lambda(v) for k, v in obj.get("lambdas", {}).items()},
            )
        )
    polys = [_parse_poly(f) for f in data.get("polynomials", [])]
    return ResolutionGraph(
        r=data["r"],
        polynomials=polys,
        divisors=divisors,
        intersections=intersections,
        base_centers=tuple(_parse_point(c) for c in data.get("base_centers", [])),
        blowup_count=data.get("blowup_count", 0),
        charts=None,
        base_consts=None
        if data.get("base_consts") is None
        else [_parse_frac(c) for c in data["base_consts"]],
    )


def dumps_graph(graph):
    return json.dumps(graph_to_json(graph), indent=2, sort_keys=True) + "\n"


def save_graph(graph, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_graph(graph))


def load_graph(path):
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_json(json.load(fh))
