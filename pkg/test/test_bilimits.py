import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from polycat.bilimits.limits import (PolyDiagram, colimit_universal_check,
                                     coequalizer, coproduct,
                                     coproduct_universal_check, general_colimit,
                                     general_limit, limit_universal_check,
                                     product, product_universal_check,
                                     universal_property_check)
from polycat.finset.finite_sets import (POINT, FinSet, SetMap, ShapeError,
                                        cospan_shape, discrete_shape,
                                        enumerate_maps, parallel_shape,
                                        pullback)
from polycat.poly.polynomial import (PolyMap, Polynomial, compose_maps,
                                     constant, hom_set, identity_map,
                                     identity_y, iso_check, representable,
                                     small_polynomials)

WALKING_ARROW = Polynomial.from_directions({"a": ["f", "id_a"], "b": ["id_b"]})
Y2 = representable(FinSet(("0", "1")))


def finset(n: int, prefix: str) -> FinSet:
    return FinSet(tuple(f"{prefix}{k}" for k in range(n)))


def to_y(p: Polynomial, picks) -> PolyMap:
    return PolyMap.from_tables(p, identity_y(), {b: "*" for b in p.positions}, {b: {"*": picks[b]} for b in p.positions})


def test_product_positions_and_directions():
    prod, pi0, pi1 = product(WALKING_ARROW, Y2)
    assert prod.positions.elements == ("(a,*)", "(b,*)")
    assert prod["(a,*)"].elements == ("(0,f)", "(0,id_a)", "(1,0)", "(1,1)")
    assert len(prod["(b,*)"]) == 3
    assert pi0.on_positions("(a,*)") == "a"
    assert pi1.sharp("(b,*)")("1") == "(1,1)"


def test_product_with_terminal_is_identity_up_to_iso():
    prod, _, _ = product(WALKING_ARROW, constant(POINT))
    assert iso_check(prod, WALKING_ARROW) is not None


def test_coproduct_tags_positions():
    cone = coproduct([WALKING_ARROW, Y2])
    assert cone.polynomial.positions.elements == ("(0,a)", "(0,b)", "(1,*)")
    assert cone.legs["1"].on_positions("*") == "(1,*)"
    assert cone.polynomial["(0,a)"] == WALKING_ARROW["a"]


def test_empty_coproduct_is_zero():
    cone = coproduct([])
    assert len(cone.polynomial.positions) == 0


def test_product_universal_property():
    assert product_universal_check(WALKING_ARROW, Y2, small_polynomials(1, 2))


def test_coproduct_universal_property():
    assert coproduct_universal_check([WALKING_ARROW, Y2], small_polynomials(1, 2))


@pytest.mark.slow
def test_product_coproduct_universal_exhaustive():
    small = list(small_polynomials(2, 2))
    for p1, p2 in itertools.product(small, repeat=2):
        assert product_universal_check(p1, p2, small)
        assert coproduct_universal_check([p1, p2], small)


def _span_coequalizer(a: FinSet, b: FinSet, x: FinSet, h: SetMap, k: SetMap):
    """``y^X ⇉ y^A + y^B`` picking the two summands with ``h: A -> X`` and ``k: B -> X``"""
    source = representable(x)
    cone = coproduct([representable(a), representable(b)])
    f = PolyMap.from_tables(source, cone.polynomial, {"*": "(0,*)"}, {"*": h.as_dict()})
    g = PolyMap.from_tables(source, cone.polynomial, {"*": "(1,*)"}, {"*": k.as_dict()})
    return f, g


def _check_span(na: int, nb: int, nx: int):
    a, b, x = finset(na, "a"), finset(nb, "b"), finset(nx, "x")
    for h in enumerate_maps(a, x):
        for k in enumerate_maps(b, x):
            f, g = _span_coequalizer(a, b, x, h, k)
            result, structure = coequalizer(f, g)
            assert len(result.positions) == 1
            (position,) = result.positions
            assert len(result[position]) == len(pullback(h, k).apex)
            assert result == structure.dst


def test_coequalizer_is_pullback_of_directions():
    for na, nb, nx in itertools.product(range(3), repeat=3):
        if nx == 0 and (na or nb):
            continue
        _check_span(na, nb, nx)


@pytest.mark.slow
def test_coequalizer_is_pullback_exhaustive():
    for na, nb, nx in itertools.product(range(4), repeat=3):
        if nx == 0 and (na or nb):
            continue
        _check_span(na, nb, nx)


def test_coequalizer_universal_property():
    a, b, x = finset(2, "a"), finset(1, "b"), finset(2, "x")
    h = SetMap.from_mapping(a, x, {"a0": "x0", "a1": "x1"})
    k = SetMap.from_mapping(b, x, {"b0": "x1"})
    f, g = _span_coequalizer(a, b, x, h, k)
    result, structure = coequalizer(f, g)
    assert universal_property_check(result, structure, f, g, small_polynomials(1, 2))


def test_coequalizer_of_equal_maps_is_target():
    phi = identity_map(WALKING_ARROW)
    result, structure = coequalizer(phi, phi)
    assert result.positions == WALKING_ARROW.positions
    assert structure.is_isomorphism()


def test_coequalizer_needs_parallel_maps():
    with pytest.raises(ShapeError):
        coequalizer(identity_map(WALKING_ARROW), identity_map(Y2))


def _cospan() -> PolyDiagram:
    f = to_y(WALKING_ARROW, {"a": "id_a", "b": "id_b"})
    g = to_y(Y2, {"*": "0"})
    return PolyDiagram.build(cospan_shape(), {"A": WALKING_ARROW, "B": Y2, "X": identity_y()}, {"f": f, "g": g})


def test_limit_of_cospan():
    cone = general_limit(_cospan())
    p = cone.polynomial
    assert p.positions.elements == ("(a,*,*)", "(b,*,*)")
    assert len(p["(a,*,*)"]) == 3
    assert len(p["(b,*,*)"]) == 2


def test_limit_universal_property():
    assert limit_universal_check(_cospan(), small_polynomials(1, 1))


def test_limit_of_discrete_diagram_is_product():
    d = PolyDiagram(discrete_shape(["0", "1"]), (WALKING_ARROW, Y2), ())
    assert general_limit(d).polynomial == product(WALKING_ARROW, Y2)[0]


def test_colimit_of_parallel_pair_matches_coequalizer():
    a, b, x = finset(1, "a"), finset(1, "b"), finset(1, "x")
    f, g = _span_coequalizer(a, b, x, SetMap(a, x, ("x0",)), SetMap(b, x, ("x0",)))
    d = PolyDiagram.build(parallel_shape(), {"src": f.src, "dst": f.dst}, {"f": f, "g": g})
    cone = general_colimit(d)
    direct, _ = coequalizer(f, g)
    assert iso_check(cone.polynomial, direct) is not None
    assert colimit_universal_check(d, small_polynomials(1, 1))


def test_colimit_of_discrete_diagram_is_coproduct():
    d = PolyDiagram(discrete_shape(["0", "1"]), (WALKING_ARROW, Y2), ())
    cone = general_colimit(d)
    assert iso_check(cone.polynomial, coproduct([WALKING_ARROW, Y2]).polynomial) is not None


def _three_position_pair():
    """``p1 = y^X`` sent to the positions ``0`` and ``1`` of a three-position ``p2``"""
    x = finset(2, "x")
    p1 = representable(x)
    p2 = Polynomial.from_directions({"0": ["a0", "a1", "a2"], "1": ["b0"], "2": ["c0"]})
    f = PolyMap.from_tables(p1, p2, {"*": "0"}, {"*": {"a0": "x0", "a1": "x1", "a2": "x1"}})
    g = PolyMap.from_tables(p1, p2, {"*": "1"}, {"*": {"b0": "x1"}})
    return f, g


def test_coequalizer_merges_two_of_three_positions():
    f, g = _three_position_pair()
    result, structure = coequalizer(f, g)
    assert result.positions.elements == ("0", "2")
    assert len(result["0"]) == 2
    assert len(result["2"]) == 1
    assert structure.on_positions.as_dict() == {"0": "0", "1": "0", "2": "2"}
    assert set(structure.sharp("0").as_dict().values()) == {"a1", "a2"}
    assert set(structure.sharp("1").as_dict().values()) == {"b0"}
    assert universal_property_check(result, structure, f, g, small_polynomials(2, 2))


def test_representative_directions_are_not_a_coequalizer():
    f, g = _three_position_pair()
    p2 = f.dst
    candidate = Polynomial.from_directions({"0": ["b0"], "2": ["c0"]})
    cocone = PolyMap.from_tables(
        p2,
        candidate,
        {"0": "0", "1": "0", "2": "2"},
        {"0": {"b0": "a1"}, "1": {"b0": "b0"}, "2": {"c0": "c0"}},
    )
    assert compose_maps(cocone, f) == compose_maps(cocone, g)
    assert not universal_property_check(candidate, cocone, f, g, small_polynomials(1, 1))


SOURCES = list(small_polynomials(2, 2))
TARGETS = [p for p in small_polynomials(3, 2) if len(p.positions) > 0]


def parallel_pair(data):
    p1 = data.draw(st.sampled_from(SOURCES))
    p2 = data.draw(st.sampled_from(TARGETS))
    maps = hom_set(p1, p2)
    assume(maps)
    return data.draw(st.sampled_from(maps)), data.draw(st.sampled_from(maps))


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_coequalizer_universal_property_random(data):
    f, g = parallel_pair(data)
    result, structure = coequalizer(f, g)
    assert universal_property_check(result, structure, f, g, small_polynomials(1, 2))


@pytest.mark.slow
@settings(max_examples=200, deadline=None)
@given(st.data())
def test_coequalizer_universal_property_random_wider_targets(data):
    f, g = parallel_pair(data)
    result, structure = coequalizer(f, g)
    assert universal_property_check(result, structure, f, g, small_polynomials(2, 2))
