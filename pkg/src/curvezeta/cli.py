"""Command-line front end.

Subcommands cover the pipeline stage by stage: resolve, zeta, poles,
monodromy, check-conjectures, oracle-verify, export-graph.  All output is
deterministic for a fixed invocation: collections are sorted before printing
and all numbers are exact.  With an output directory the report path also
writes delimited tables and PNG figures next to the structured files.

Exit codes: 0 success/verified; 1 mismatch or failed/inconclusive verdicts;
2 usage or expression parse errors; 3 non-rational blow-up center;
4 bad prime for the chosen reduction; 5 other domain errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .exprparse import PolynomialSyntaxError, parse_polynomial
from .graphio import GraphFormatError, dumps_graph, load_graph, save_graph
from .monodromy import (
    alexander_support_bound,
    check_holomorphy_conjecture,
    check_monodromy_conjecture,
    sabbah_zeta,
    support_certificate,
)
from .oracle import (
    BudgetExceeded,
    compare_with_closed_form,
    enumerate_coefficients,
    enumerate_sharded,
)
from .reduction import (
    BadPrime,
    CharacterTuple,
    ReductionError,
    ResidualFunction,
    reduce_mod_p,
)
from .resolution import (
    NonRationalCenterError,
    ResolutionError,
    export_dual_graph,
    resolve,
)
from .zeta import (
    DivergentLimit,
    actual_polar_hyperplanes,
    candidate_poles,
    denef_zeta,
    holomorphy_test,
    unmask_filter,
)

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_NONRATIONAL = 3
EXIT_BADPRIME = 4
EXIT_DOMAIN = 5


# ---------------------------------------------------------------------------
# shared argument handling


def _add_input_flags(sub, need_prime=True):
    sub.add_argument(
        "-f",
        "--poly",
        action="append",
        default=[],
        metavar="EXPR",
        help="curve polynomial in x, y (repeat for a tuple of curves)",
    )
    sub.add_argument(
        "--graph",
        metavar="PATH",
        help="load a previously exported resolution graph instead of resolving",
    )
    if need_prime:
        sub.add_argument("-p", "--prime", type=int, required=True, help="residue prime")


def _add_character_flags(sub):
    sub.add_argument(
        "--chi",
        metavar="E1,...,ER",
        help="character exponents, one integer per curve (default: trivial)",
    )
    sub.add_argument(
        "--chi-all",
        action="store_true",
        help="run every character tuple of order dividing p-1",
    )
    sub.add_argument(
        "--phi",
        default="unit-ball",
        metavar="KIND",
        help="residual weight: unit-ball, origin-class, or table=PATH",
    )


def _load_graph(args):
    if args.graph:
        return load_graph(args.graph)
    if not args.poly:
        raise UsageError("provide at least one -f/--poly or a --graph file")
    return resolve([parse_polynomial(text) for text in args.poly])


class UsageError(Exception):
    pass


def _parse_chi_list(args, p, r):
    if getattr(args, "chi_all", False):
        return list(CharacterTuple.all_tuples(p, r))
    if getattr(args, "chi", None):
        parts = [part.strip() for part in args.chi.split(",")]
        if len(parts) != r:
            raise UsageError(f"--chi needs exactly {r} exponents, got {len(parts)}")
        try:
            exponents = tuple(int(part) % (p - 1) for part in parts)
        except ValueError as exc:
            raise UsageError(f"bad --chi value: {exc}") from exc
        return [CharacterTuple(p, exponents)]
    return [CharacterTuple.trivial(p, r)]


def _parse_phi(args, p):
    spec = getattr(args, "phi", "unit-ball")
    if spec == "unit-ball":
        return ResidualFunction.unit_ball()
    if spec == "origin-class":
        return ResidualFunction.origin_class()
    if spec.startswith("table="):
        path = spec[len("table=") :]
        with open(path) as handle:
            raw = json.load(handle)
        weights = {}
        for key, value in raw.items():
            a, b = (int(part) for part in key.split(","))
            weights[(a, b)] = Fraction(value)
        return ResidualFunction.from_table(weights, p)
    raise UsageError(f"unknown --phi value {spec!r}")


def _ensure_outdir(args):
    if getattr(args, "output", None):
        os.makedirs(args.output, exist_ok=True)
        return args.output
    return None


def _write_json(path, payload):
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _hyperplane_list(hyperplanes):
    return [H.render() for H in sorted(hyperplanes)]


# ---------------------------------------------------------------------------
# subcommands


def _cmd_resolve(args):
    graph = _load_graph(args)
    print(f"curves: {', '.join(f.render(('x', 'y')) for f in graph.polynomials)}")
    print(f"blow-ups: {graph.blowup_count}")
    print(f"divisors: {len(graph.divisors)}")
    for d in graph.divisors:
        base = "" if d.base_point is None else f" over ({d.base_point[0]},{d.base_point[1]})"
        print(f"  E{d.id}: {d.kind}, N={tuple(d.N)}, nu={d.nu}{base}")
    print(f"intersections: {len(graph.intersections)}")
    for ix in sorted(graph.intersections, key=lambda ix: tuple(ix.divisors)):
        print(
            f"  E{ix.divisors[0]} x E{ix.divisors[1]} over "
            f"({ix.plane_point[0]},{ix.plane_point[1]})"
        )
    outdir = _ensure_outdir(args)
    if outdir:
        from . import report

        save_graph(graph, os.path.join(outdir, "graph.json"))
        with open(os.path.join(outdir, "graph.dot"), "w") as handle:
            handle.write(export_dual_graph(graph))
        report.write_divisors_csv(os.path.join(outdir, "divisors.csv"), graph)
        report.figure_dual_graph(os.path.join(outdir, "dual_graph.png"), graph)
        print(f"wrote graph.json, graph.dot, divisors.csv, dual_graph.png to {outdir}")
    return EXIT_OK


def _cmd_export_graph(args):
    graph = _load_graph(args)
    save_graph(graph, args.output)
    print(f"wrote {args.output}")
    return EXIT_OK


def _cmd_zeta(args):
    graph = _load_graph(args)
    reduced = reduce_mod_p(graph, args.prime)
    phi = _parse_phi(args, args.prime)
    chi_list = _parse_chi_list(args, args.prime, graph.r)
    outdir = _ensure_outdir(args)
    for chi in chi_list:
        Z = denef_zeta(reduced, chi, phi)
        print(f"chi={chi.exponents} phi={phi.label()}")
        print(f"  Z = {Z.reduced_function()!r}")
        print(f"  Z(0) = {Z.value_at_origin()!r}")
        print(f"  actual poles: {_hyperplane_list(actual_polar_hyperplanes(Z))}")
        if outdir:
            from . import report

            tag = "-".join(str(e) for e in chi.exponents)
            _write_json(os.path.join(outdir, f"zeta_chi{tag}.json"), Z.as_dict())
            report.write_zeta_csv(os.path.join(outdir, f"zeta_chi{tag}.csv"), Z)
    if outdir:
        print(f"wrote zeta files to {outdir}")
    return EXIT_OK


def _cmd_poles(args):
    graph = _load_graph(args)
    reduced = reduce_mod_p(graph, args.prime)
    phi = _parse_phi(args, args.prime)
    chi_list = _parse_chi_list(args, args.prime, graph.r)
    outdir = _ensure_outdir(args)
    for chi in chi_list:
        candidates = candidate_poles(graph, chi)
        unmasked = unmask_filter(graph, candidates)
        Z = denef_zeta(reduced, chi, phi)
        actual = actual_polar_hyperplanes(Z)
        print(f"chi={chi.exponents}")
        print(f"  candidates: {_hyperplane_list(candidates)}")
        print(f"  unmasked:   {_hyperplane_list(unmasked)}")
        print(f"  actual:     {_hyperplane_list(actual)}")
        print(f"  holomorphic: {holomorphy_test(Z)}")
        if outdir:
            from . import report

            tag = "-".join(str(e) for e in chi.exponents)
            report.write_poles_csv(
                os.path.join(outdir, f"poles_chi{tag}.csv"), candidates, unmasked, actual
            )
            report.figure_poles(
                os.path.join(outdir, f"poles_chi{tag}.png"),
                candidates,
                unmasked,
                actual,
                graph.r,
            )
    if outdir:
        print(f"wrote pole tables and figures to {outdir}")
    return EXIT_OK


def _parse_point(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("--point expects two comma-separated rationals")
    return (Fraction(parts[0]), Fraction(parts[1]))


def _cmd_monodromy(args):
    graph = _load_graph(args)
    point = _parse_point(args.point)
    zeta = sabbah_zeta(graph, point)
    print(f"base point: ({point[0]},{point[1]})")
    if zeta.is_trivial():
        print("zeta: 1")
    else:
        print(f"zeta factors: {list(zeta.factors)}")
        if graph.r == 1:
            num, den = zeta.univariate_num_den()
            print(f"zeta simplified: ({num.render(['t'])}) / ({den.render(['t'])})")
    bound = alexander_support_bound(graph, point)
    print("support bound cotori:")
    for cotorus in bound:
        print(f"  N={cotorus.N} tau={cotorus.tau}")
    print("certified support components:")
    for cotorus, net in support_certificate(graph, point):
        print(f"  N={cotorus.N} tau={cotorus.tau} net={net:+d}")
    outdir = _ensure_outdir(args)
    if outdir:
        payload = {
            "base_point": [str(point[0]), str(point[1])],
            "factors": [
                {"N": list(N), "exponent": e} for N, e in zeta.factors
            ],
            "support_bound": [
                {"N": list(c.N), "tau": str(c.tau)} for c in bound
            ],
            "certified": [
                {"N": list(c.N), "tau": str(c.tau), "net": net}
                for c, net in support_certificate(graph, point)
            ],
        }
        _write_json(os.path.join(outdir, "monodromy.json"), payload)
        print(f"wrote monodromy.json to {outdir}")
    return EXIT_OK


def _cmd_check_conjectures(args):
    graph = _load_graph(args)
    reduced = reduce_mod_p(graph, args.prime)
    phi = ResidualFunction.unit_ball()
    chi_list = _parse_chi_list(args, args.prime, graph.r)
    all_verified = True
    entries = []
    for chi in chi_list:
        Z = denef_zeta(reduced, chi, phi)
        report = check_monodromy_conjecture(graph, Z)
        print(f"monodromy conjecture, chi={chi.exponents}: {report.verdict()}")
        for entry in report.entries:
            detail = f"    {entry.hyperplane.render()}: {entry.verdict}"
            if entry.witness_kind:
                detail += f" (witness E{entry.witness_divisor}, {entry.witness_kind}"
                if entry.w is not None:
                    detail += f", w={entry.w}"
                detail += ")"
            print(detail)
            entries.append(
                {
                    "kind": "monodromy",
                    "chi": list(chi.exponents),
                    "hyperplane": entry.hyperplane.render(),
                    "verdict": entry.verdict,
                    "witness": entry.witness_divisor,
                    "w": entry.w,
                }
            )
        all_verified = all_verified and report.verdict() == "verified"
    holo = check_holomorphy_conjecture(graph, chi_list, args.prime)
    for entry in holo.entries:
        status = "holomorphic" if entry.holomorphic else "has poles"
        witness = "" if entry.witness_divisor is None else f" (witness E{entry.witness_divisor})"
        print(
            f"holomorphy conjecture, chi={entry.chi.exponents}: "
            f"{status}, {entry.verdict}{witness}"
        )
        entries.append(
            {
                "kind": "holomorphy",
                "chi": list(entry.chi.exponents),
                "verdict": entry.verdict,
                "witness": entry.witness_divisor,
            }
        )
    all_verified = all_verified and holo.verdict() == "verified"
    print(f"overall: {'verified' if all_verified else 'NOT verified'}")
    outdir = _ensure_outdir(args)
    if outdir:
        _write_json(os.path.join(outdir, "conjectures.json"), {"entries": entries})
        print(f"wrote conjectures.json to {outdir}")
    return EXIT_OK if all_verified else EXIT_VERDICT


def _cmd_oracle_verify(args):
    graph = _load_graph(args)
    reduced = reduce_mod_p(graph, args.prime)
    phi = _parse_phi(args, args.prime)
    chi_list = _parse_chi_list(args, args.prime, graph.r)
    polys = graph.polynomials
    outdir = _ensure_outdir(args)
    all_equal = True
    for chi in chi_list:
        Z = denef_zeta(reduced, chi, phi)
        if args.shards > 1:
            table = enumerate_sharded(
                polys, chi, phi, args.prime, args.bound,
                budget=args.budget, shards=args.shards,
            )
        else:
            table = enumerate_coefficients(
                polys, chi, phi, args.prime, args.bound, budget=args.budget
            )
        result = compare_with_closed_form(Z, table)
        print(f"chi={chi.exponents} phi={phi.label()} B={args.bound}: {result.describe()}")
        all_equal = all_equal and result.equal
        if outdir:
            from . import report

            tag = "-".join(str(e) for e in chi.exponents)
            report.write_coefficients_csv(
                os.path.join(outdir, f"coefficients_chi{tag}.csv"), Z, table
            )
            report.figure_coefficient_comparison(
                os.path.join(outdir, f"coefficients_chi{tag}.png"), Z, table
            )
    if outdir:
        print(f"wrote coefficient tables and figures to {outdir}")
    return EXIT_OK if all_equal else EXIT_VERDICT


# ---------------------------------------------------------------------------
# parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="curvezeta",
        description="exact multivariate local zeta functions of plane curves",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("resolve", help="embedded resolution and dual graph")
    _add_input_flags(sub, need_prime=False)
    sub.add_argument("-o", "--output", metavar="DIR", help="output directory")
    sub.set_defaults(handler=_cmd_resolve)

    sub = commands.add_parser("export-graph", help="write the resolution graph as JSON")
    _add_input_flags(sub, need_prime=False)
    sub.add_argument("-o", "--output", metavar="PATH", required=True)
    sub.set_defaults(handler=_cmd_export_graph)

    sub = commands.add_parser("zeta", help="assemble the closed-form zeta function")
    _add_input_flags(sub)
    _add_character_flags(sub)
    sub.add_argument("-o", "--output", metavar="DIR", help="output directory")
    sub.set_defaults(handler=_cmd_zeta)

    sub = commands.add_parser("poles", help="candidate, unmasked, and actual poles")
    _add_input_flags(sub)
    _add_character_flags(sub)
    sub.add_argument("-o", "--output", metavar="DIR", help="output directory")
    sub.set_defaults(handler=_cmd_poles)

    sub = commands.add_parser("monodromy", help="nearby-cycle zeta and support data")
    _add_input_flags(sub, need_prime=False)
    sub.add_argument("--point", default="0,0", help="base point a,b (default origin)")
    sub.add_argument("-o", "--output", metavar="DIR", help="output directory")
    sub.set_defaults(handler=_cmd_monodromy)

    sub = commands.add_parser(
        "check-conjectures", help="monodromy and holomorphy conjecture verdicts"
    )
    _add_input_flags(sub)
    _add_character_flags(sub)
    sub.add_argument("-o", "--output", metavar="DIR", help="output directory")
    sub.set_defaults(handler=_cmd_check_conjectures)

    sub = commands.add_parser(
        "oracle-verify", help="compare the closed form against brute-force enumeration"
    )
    _add_input_flags(sub)
    _add_character_flags(sub)
    sub.add_argument("-B", "--bound", type=int, default=3, help="truncation bound")
    sub.add_argument(
        "--budget", type=int, default=10**8, help="residue-class enumeration budget"
    )
    sub.add_argument(
        "--shards", type=int, default=1, help="number of x mod p enumeration shards"
    )
    sub.add_argument("-o", "--output", metavar="DIR", help="output directory")
    sub.set_defaults(handler=_cmd_oracle_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (UsageError, PolynomialSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonRationalCenterError as exc:
        print(f"error: non-rational blow-up center: {exc}", file=sys.stderr)
        return EXIT_NONRATIONAL
    except BadPrime as exc:
        print(f"error: bad prime: {exc}", file=sys.stderr)
        return EXIT_BADPRIME
    except (
        ResolutionError,
        ReductionError,
        BudgetExceeded,
        DivergentLimit,
        GraphFormatError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
