"""Reduction mod p: good-reduction checks, character sums, stratum counts."""

from fractions import Fraction

import pytest

from curvezeta.algebra import CyclotomicNumber
from curvezeta.reduction import (
    BadPrime,
    CharacterTuple,
    ResidualFunction,
    ResidueField,
    _horner,
    gamma_condition,
    omega_chi,
    reduce_mod_p,
)
from curvezeta.resolution import resolve


def cusp_reduced(p=7):
    return reduce_mod_p(resolve(["y^2-x^3"]), p)


def hub_id(graph):
    return next(d.id for d in graph.divisors if d.N == (6,))


# ---------------------------------------------------------------------------
# good reduction


def test_cusp_accepted_at_7():
    red = cusp_reduced(7)
    assert red.p == 7
    assert red.partition_check()


def test_tameness_rejects_small_primes():
    g = resolve(["y^2-x^3"])
    with pytest.raises(BadPrime, match="tameness: 2"):
        reduce_mod_p(g, 2)
    with pytest.raises(BadPrime, match="tameness: 3"):
        reduce_mod_p(g, 3)


def test_denominator_must_be_a_unit():
    g = resolve(["x-2/3*y"])
    with pytest.raises(BadPrime, match="denominator"):
        reduce_mod_p(g, 3)
    assert reduce_mod_p(g, 5).count_stratum_points(("div", 0)) == 5


def test_component_collapsing_to_constant():
    g = resolve(["7*x-1"])
    with pytest.raises(BadPrime, match="constant"):
        reduce_mod_p(g, 7)


def test_crossing_degenerating_mod_p():
    # transverse over Q, but the two lines coincide modulo 7
    g = resolve(["x*(x+7*y)"])
    with pytest.raises(BadPrime, match="degenerates"):
        reduce_mod_p(g, 7)
    assert reduce_mod_p(g, 5).partition_check()


# ---------------------------------------------------------------------------
# characters


def test_gamma_condition_examples():
    assert gamma_condition((6,), CharacterTuple.trivial(7, 1))
    assert gamma_condition((6,), CharacterTuple(7, (3,)))  # order 2: 3*6 = 0 mod 6
    assert not gamma_condition((6,), CharacterTuple(5, (1,)))  # order 4: 6 != 0 mod 4


def test_character_orders():
    assert CharacterTuple(7, (3,)).orders() == (2,)
    assert CharacterTuple(5, (1,)).orders() == (4,)
    assert CharacterTuple(13, (3,)).orders() == (4,)
    assert CharacterTuple.trivial(7, 2).is_trivial()
    assert CharacterTuple(7, (2, 3)).order() == 6


def test_character_tuple_validation():
    with pytest.raises(ValueError):
        CharacterTuple(8, (1,))
    with pytest.raises(ValueError):
        CharacterTuple(7, (6,))


def test_omega_of_unit_one_is_one():
    field = ResidueField(5)
    for e in range(4):
        chi = CharacterTuple(5, (e,))
        assert omega_chi((1,), chi, field) == 1


def test_omega_quadratic_character_on_nonresidue():
    # 3 is not a square modulo 7
    value = omega_chi((3,), CharacterTuple(7, (3,)), ResidueField(7))
    assert value == -1
    assert omega_chi((2,), CharacterTuple(7, (3,)), ResidueField(7)) == 1


def test_omega_chart_independence_on_cusp_hub():
    red = cusp_reduced(7)
    hub = hub_id(red.graph)
    data = red.div_data[hub]
    field = ResidueField(7)
    # both birth charts parameterize the divisor; coordinates are reciprocal
    for e in range(6):
        chi = CharacterTuple(7, (e,))
        for lam in range(1, 7):
            u1 = [_horner(c, lam, 7) for c in data["u1"]]
            u2 = [_horner(c, pow(lam, -1, 7), 7) for c in data["u2"]]
            if all(u1) and all(u2):
                assert omega_chi(u1, chi, field) == omega_chi(u2, chi, field)


# ---------------------------------------------------------------------------
# weighted point counts


def test_monomial_stratum_counts():
    g = resolve(["x^2*y^3"])
    red = reduce_mod_p(g, 5)
    phi = ResidualFunction.unit_ball()
    trivial = CharacterTuple.trivial(5, 1)
    x_axis = next(d.id for d in g.divisors if d.N == (2,))
    y_axis = next(d.id for d in g.divisors if d.N == (3,))
    assert red.c_coefficient((x_axis,), trivial, phi) == 4
    assert red.c_coefficient((x_axis, y_axis), trivial, phi) == 1


def test_unit_one_component_sums_weights_for_any_character():
    # f = x^2: the residual unit is identically 1, so the quadratic character
    # sum over the line degenerates to a plain point count
    red = reduce_mod_p(resolve(["x^2"]), 5)
    chi = CharacterTuple(5, (2,))
    assert red.c_coefficient((0,), chi, ResidualFunction.unit_ball()) == 5


def test_node_empty_stratum_count():
    red = reduce_mod_p(resolve(["x*y"]), 5)
    phi = ResidualFunction.unit_ball()
    assert red.c_coefficient((), CharacterTuple.trivial(5, 1), phi) == 16
    assert red.count_stratum_points(("empty",)) == 16


def test_character_orthogonality_on_open_torus():
    red = reduce_mod_p(resolve(["x"]), 5)
    phi = ResidualFunction.unit_ball()
    assert red.c_coefficient((), CharacterTuple.trivial(5, 1), phi) == 20
    for e in (1, 2, 3):
        assert red.c_coefficient((), CharacterTuple(5, (e,)), phi).is_zero()


def test_cusp_stratum_counts_at_7():
    red = cusp_reduced(7)
    counts = {key: red.count_stratum_points(key) for key in red.stratum_keys()}
    assert counts[("empty",)] == 42
    hub = hub_id(red.graph)
    assert counts[("div", hub)] == 8 - 3  # P^1 minus three crossings
    strict = next(d.id for d in red.graph.divisors if d.kind == "strict")
    assert counts[("div", strict)] == 6
    assert all(counts[("pair", i)] == 1 for i in range(3))
    assert sum(counts.values()) == red.surface_point_count() == 49 + 3 * 7


def test_cusp_hub_character_values_at_7():
    red = cusp_reduced(7)
    hub = hub_id(red.graph)
    phi = ResidualFunction.unit_ball()
    z6 = CyclotomicNumber.root_of_unity(6)
    expected = {
        0: CyclotomicNumber.from_rational(5),
        1: CyclotomicNumber.one() + z6 * 2,
        2: CyclotomicNumber.from_rational(-1),
        3: CyclotomicNumber.from_rational(-1),
        4: CyclotomicNumber.from_rational(-1),
        5: CyclotomicNumber.from_rational(3) - z6 * 2,
    }
    for e, value in expected.items():
        assert red.c_coefficient((hub,), CharacterTuple(7, (e,)), phi) == value
    # conjugate characters give conjugate sums
    assert expected[5] == expected[1].conjugate()


def test_trivial_character_counts_match_on_every_stratum():
    red = cusp_reduced(7)
    trivial = CharacterTuple.trivial(7, 1)
    phi = ResidualFunction.unit_ball()
    for d in red.graph.divisors:
        assert red.c_coefficient((d.id,), trivial, phi) == red.count_stratum_points(
            ("div", d.id)
        )
    for i, ix in enumerate(red.graph.intersections):
        assert red.c_coefficient(
            tuple(sorted(ix.divisors)), trivial, phi
        ) == red.count_stratum_points(("pair", i))


def test_origin_class_weights():
    red = cusp_reduced(7)
    hub = hub_id(red.graph)
    phi0 = ResidualFunction.origin_class()
    trivial = CharacterTuple.trivial(7, 1)
    # the hub lies entirely over the origin; the strict transform does not
    assert red.c_coefficient((hub,), trivial, phi0) == 5
    strict = next(d.id for d in red.graph.divisors if d.kind == "strict")
    assert red.c_coefficient((strict,), trivial, phi0).is_zero()
    assert red.c_coefficient((), trivial, phi0).is_zero()  # origin lies on the curve


def test_gamma_violation_is_rejected():
    red = cusp_reduced(7)
    chi3 = CharacterTuple(7, (2,))  # order 3
    first = next(d.id for d in red.graph.divisors if d.N == (2,))
    with pytest.raises(ValueError, match="gamma"):
        red.c_coefficient((first,), chi3, ResidualFunction.unit_ball())


def test_partition_check_across_corpus():
    for polys, p in [
        (["x"], 5),
        (["x*y"], 5),
        (["x^2*y^3"], 5),
        (["y^2-x^3"], 7),
        (["x", "y"], 5),
        (["x", "x*y"], 5),
    ]:
        assert reduce_mod_p(resolve(polys), p).partition_check()


def test_table_residual_function():
    weights = {(0, 0): Fraction(1, 2), (1, 2): Fraction(3)}
    phi = ResidualFunction.from_table(weights, 5)
    assert phi.weight((0, 0), 5) == Fraction(1, 2)
    assert phi.weight((1, 2), 5) == 3
    assert phi.weight((2, 2), 5) == 0
    with pytest.raises(ValueError):
        phi.weight((0, 0), 7)
