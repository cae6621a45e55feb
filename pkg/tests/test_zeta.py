"""Closed-form zeta functions: assembly, poles, masking, degree limits."""

from fractions import Fraction

import pytest

from curvezeta.algebra import DenominatorFactor, MultiPolynomial, RationalFunctionT
from curvezeta.reduction import CharacterTuple, ResidualFunction, reduce_mod_p
from curvezeta.resolution import Divisor, ResolutionGraph, resolve
from curvezeta.zeta import (
    DivergentLimit,
    Hyperplane,
    ZetaFunction,
    actual_polar_hyperplanes,
    candidate_poles,
    degree_limit,
    denef_zeta,
    holomorphy_test,
    ray_limit,
    unmask_filter,
)

UNIT = ResidualFunction.unit_ball()
ORIGIN = ResidualFunction.origin_class()


def zeta_of(polys, p, exponents=None, phi=UNIT):
    graph = resolve(polys)
    reduced = reduce_mod_p(graph, p)
    chi = (
        CharacterTuple.trivial(p, graph.r)
        if exponents is None
        else CharacterTuple(p, exponents)
    )
    return graph, denef_zeta(reduced, chi, phi)


def measure_factor(p, r, N):
    """(1 - p^-1) / (1 - p^-1 t^N)."""
    return RationalFunctionT(
        p,
        r,
        MultiPolynomial.constant(r, Fraction(p - 1, p)),
        (DenominatorFactor(1, N),),
    )


# ---------------------------------------------------------------------------
# hyperplane type


def test_hyperplane_normalization():
    assert Hyperplane.normalize((2, 4), 6) == Hyperplane((1, 2), 3)
    assert Hyperplane.normalize((6,), 5) == Hyperplane((6,), 5)
    assert Hyperplane((6,), 5).matches((12,), 10)
    assert not Hyperplane((6,), 5).matches((6,), 10)


def test_hyperplane_render():
    assert Hyperplane((6,), 5).render() == "6*s + 5 = 0"
    assert Hyperplane((1, 2), 3).render() == "s1 + 2*s2 + 3 = 0"
    assert Hyperplane((0, 1), 1).render() == "s2 + 1 = 0"


def test_hyperplane_validation():
    with pytest.raises(ValueError):
        Hyperplane((2,), 4)  # not primitive
    with pytest.raises(ValueError):
        Hyperplane((0,), 1)
    with pytest.raises(ValueError):
        Hyperplane((1,), 0)


# ---------------------------------------------------------------------------
# closed forms


def test_smooth_line_closed_form():
    _, Z = zeta_of(["x"], 5)
    assert Z.function == measure_factor(5, 1, (1,))
    assert Z.taylor_coefficients(2) == {
        (0,): Fraction(4, 5),
        (1,): Fraction(4, 25),
        (2,): Fraction(4, 125),
    }


def test_monomial_closed_form_is_a_product():
    _, Z = zeta_of(["x^2*y^3"], 5)
    assert Z.function == measure_factor(5, 1, (2,)) * measure_factor(5, 1, (3,))


def test_coordinate_pair_closed_form_separates():
    _, Z = zeta_of(["x", "y"], 5)
    assert Z.function == measure_factor(5, 2, (1, 0)) * measure_factor(5, 2, (0, 1))


def test_value_at_origin_is_scaled_empty_coefficient():
    graph = resolve(["y^2-x^3"])
    reduced = reduce_mod_p(graph, 7)
    for e in range(6):
        chi = CharacterTuple(7, (e,))
        Z = denef_zeta(reduced, chi, UNIT)
        c_empty = dict(Z.terms)[()]
        assert Z.value_at_origin() == c_empty * Fraction(1, 49)


def test_empty_term_is_always_recorded():
    # even a vanishing c_empty must appear in the provenance
    _, Z = zeta_of(["x"], 5, exponents=(1,))
    assert () in dict(Z.terms)


# ---------------------------------------------------------------------------
# candidate and actual poles


def test_cusp_candidate_poles():
    graph = resolve(["y^2-x^3"])
    assert candidate_poles(graph) == {Hyperplane((1,), 1), Hyperplane((6,), 5)}


def test_candidate_poles_with_character_restriction():
    graph = resolve(["y^2-x^3"])
    assert candidate_poles(graph, CharacterTuple(5, (1,))) == set()  # order 4
    assert candidate_poles(graph, CharacterTuple(7, (3,))) == {
        Hyperplane((1,), 1),
        Hyperplane((6,), 5),
    }  # order 2 satisfies gamma on every divisor of the cusp


def test_coordinate_pair_candidates():
    graph = resolve(["x", "y"])
    assert candidate_poles(graph) == {
        Hyperplane((1, 0), 1),
        Hyperplane((0, 1), 1),
    }


def test_cusp_actual_poles_trivial_character():
    _, Z = zeta_of(["y^2-x^3"], 7)
    assert actual_polar_hyperplanes(Z) == {Hyperplane((1,), 1), Hyperplane((6,), 5)}
    assert not holomorphy_test(Z)


def test_cusp_order_four_character_is_constant():
    # gamma fails on every divisor, so only I = {} contributes
    _, Z = zeta_of(["y^2-x^3"], 13, exponents=(3,))
    assert Z.is_constant()
    assert actual_polar_hyperplanes(Z) == set()
    assert holomorphy_test(Z)


def test_hand_built_cancellation():
    q = 7
    fac = DenominatorFactor(1, (1,))
    numerator = fac.as_polynomial(q) * MultiPolynomial.constant(1, Fraction(3))
    func = RationalFunctionT(q, 1, numerator, (fac,))
    Z = ZetaFunction(func, (), q, CharacterTuple.trivial(q, 1), UNIT, {})
    assert actual_polar_hyperplanes(Z) == set()
    assert holomorphy_test(Z)


def test_containment_chain_on_corpus():
    for polys, p in [
        (["y^2-x^3"], 7),
        (["x*y"], 5),
        (["x^2*y^3"], 5),
        (["x", "x*y"], 5),
    ]:
        graph = resolve(polys)
        reduced = reduce_mod_p(graph, p)
        for chi in CharacterTuple.all_tuples(p, graph.r):
            Z = denef_zeta(reduced, chi, UNIT)
            candidates = candidate_poles(graph, chi)
            unmasked = unmask_filter(graph, candidates)
            actual = actual_polar_hyperplanes(Z)
            assert actual <= unmasked <= candidates


# ---------------------------------------------------------------------------
# the unmask filter


def test_unmask_keeps_cusp_hyperplanes():
    graph = resolve(["y^2-x^3"])
    candidates = candidate_poles(graph)
    assert unmask_filter(graph, candidates) == candidates  # strict + triple point


def test_unmask_drops_unsupported_hyperplane():
    # lone exceptional divisor with only two boundary points and no strict
    # transform on its hyperplane: the filter must drop the candidate
    divisor = Divisor(
        id=0, kind="exceptional", N=(3,), nu=2, marked_lambdas=(Fraction(1), Fraction(2))
    )
    graph = ResolutionGraph(
        r=1,
        polynomials=[],
        divisors=[divisor],
        intersections=[],
        base_centers=(),
        blowup_count=1,
    )
    candidates = candidate_poles(graph)
    assert candidates == {Hyperplane((3,), 2)}
    assert unmask_filter(graph, candidates) == set()


def test_unmask_keeps_strict_transform():
    graph = resolve(["x"])
    assert unmask_filter(graph, candidate_poles(graph)) == {Hyperplane((1,), 1)}


# ---------------------------------------------------------------------------
# degree limits


def test_degree_limit_requires_origin_localization():
    _, Z = zeta_of(["x"], 5)
    with pytest.raises(ValueError):
        degree_limit(Z)


def test_degree_limit_smooth_line_both_routes():
    _, Z = zeta_of(["x"], 5, phi=ORIGIN)
    value = degree_limit(Z)
    assert value == ray_limit(Z)
    assert value == Fraction(1 - 5, 25)  # q^-2 * c * (1-q) with c = 1


def test_degree_limit_zero_outside_support():
    _, Z = zeta_of(["y^2-x^3"], 13, exponents=(3,), phi=ORIGIN)
    assert degree_limit(Z).is_zero()
    assert ray_limit(Z).is_zero()


def test_degree_limit_agrees_on_cusp_all_characters():
    graph = resolve(["y^2-x^3"])
    reduced = reduce_mod_p(graph, 7)
    for e in range(6):
        Z = denef_zeta(reduced, CharacterTuple(7, (e,)), ORIGIN)
        assert degree_limit(Z) == ray_limit(Z)


def test_hand_built_limit_is_zero():
    # (1 - q^-1)/(1 - q^-1 t) rewritten through the contribution ledger:
    # c_empty = q(q-1), c_strict = q, and the factor rule collapses to zero
    q = 5
    func = RationalFunctionT(
        q, 1, MultiPolynomial.constant(1, Fraction(q - 1, q)), (DenominatorFactor(1, (1,)),)
    )
    Z = ZetaFunction(
        func,
        [((), Fraction(q * (q - 1))), ((0,), Fraction(q))],
        q,
        CharacterTuple.trivial(q, 1),
        ORIGIN,
        {0: (1, (1,))},
    )
    assert degree_limit(Z).is_zero()
    assert ray_limit(Z).is_zero()


def test_divergent_limit_cases():
    q = 5
    # a contributing factor with no t-dependence
    Z = ZetaFunction(
        RationalFunctionT.constant(q, 1, Fraction(1)),
        [((0,), Fraction(1))],
        q,
        CharacterTuple.trivial(q, 1),
        ORIGIN,
        {0: (1, (0,))},
    )
    with pytest.raises(DivergentLimit):
        degree_limit(Z)
    # numerator dominating along the ray
    func = RationalFunctionT(
        q, 1, MultiPolynomial.monomial((2,), Fraction(1)), (DenominatorFactor(1, (1,)),)
    )
    Zray = ZetaFunction(func, (), q, CharacterTuple.trivial(q, 1), ORIGIN, {})
    with pytest.raises(DivergentLimit):
        ray_limit(Zray)


# ---------------------------------------------------------------------------
# structured output


def test_as_dict_is_json_friendly():
    import json

    _, Z = zeta_of(["y^2-x^3"], 7, exponents=(3,))
    payload = Z.as_dict()
    text = json.dumps(payload, sort_keys=True)
    assert json.loads(text) == payload
    assert payload["p"] == 7
    assert payload["chi"] == [3]
    assert all(fac["nu"] >= 1 for fac in payload["denominator"])
