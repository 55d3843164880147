import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from polycat.finset.finite_sets import (EMPTY, FinSet, SetMap,
                                        ShapeError, ValidationError, compose,
                                        enumerate_maps, is_bijection)
from polycat.poly.polynomial import (PolyMap, Polynomial, apply_map,
                                     compose_maps, constant, evaluate,
                                     evaluation_index,
                                     first_difference, hom_count, hom_set,
                                     identity_map, identity_y, iso_check,
                                     iter_hom, linear, representable,
                                     section_label, small_polynomials,
                                     yoneda_element)

X = FinSet(("x", "y", "z"))
TWO = FinSet(("0", "1"))

# y^2 + y
WALKING_ARROW = Polynomial.from_directions({"a": ["f", "id_a"], "b": ["id_b"]})


def finset(n: int) -> FinSet:
    return FinSet(tuple(str(k) for k in range(n)))


polys = st.sampled_from(list(small_polynomials(2, 2)))
sets = st.integers(min_value=0, max_value=2).map(finset)


def test_y_squared_on_three_elements():
    assert len(evaluate(representable(TWO), X)) == 9


def test_constant_and_identity():
    assert evaluate(constant(X), TWO).elements == ("(x,{})", "(y,{})", "(z,{})")
    assert len(evaluate(identity_y(), X)) == 3
    assert len(evaluate(linear(2), X)) == 6


def test_evaluate_on_empty_set():
    assert len(evaluate(WALKING_ARROW, EMPTY)) == 0
    assert len(evaluate(constant(X), EMPTY)) == 3


def test_evaluate_labels():
    assert "(b,{id_b:z})" in evaluate(WALKING_ARROW, X)
    assert "(a,{f:x,id_a:y})" in evaluate(WALKING_ARROW, X)


def test_total_space_and_bundle():
    assert WALKING_ARROW.total_space.elements == ("(a,f)", "(a,id_a)", "(b,id_b)")
    assert WALKING_ARROW.bundle("(a,f)") == "a"


def test_small_polynomials_are_one_per_class():
    found = list(small_polynomials(2, 1))
    # 0 positions: 1, 1 position: 2, 2 positions: 3
    assert len(found) == 6
    for i, p in enumerate(found):
        for q in found[i + 1:]:
            assert iso_check(p, q) is None


def test_hom_count_closed_form():
    # |p[a]|^|q[a]| + |p[a]|^|q[b]| = 4 + 2, times |p[b]|^2 + |p[b]|^1 = 2
    assert hom_count(WALKING_ARROW, WALKING_ARROW) == 12
    assert len(hom_set(WALKING_ARROW, WALKING_ARROW)) == 12


def test_hom_into_zero_from_nonempty_is_empty():
    assert hom_count(identity_y(), constant(EMPTY)) == 0
    assert hom_count(constant(EMPTY), identity_y()) == 1


def test_polymap_direction_table_checked():
    with pytest.raises(ValidationError):
        PolyMap.from_tables(
            identity_y(),
            WALKING_ARROW,
            {"*": "a"},
            {"*": {"id_b": "*"}},
        )


def test_compose_maps_with_identity():
    for phi in iter_hom(WALKING_ARROW, representable(TWO)):
        assert compose_maps(identity_map(phi.dst), phi) == phi
        assert compose_maps(phi, identity_map(phi.src)) == phi


def test_compose_maps_requires_matching_ends():
    phi = identity_map(WALKING_ARROW)
    psi = identity_map(identity_y())
    with pytest.raises(ShapeError):
        compose_maps(psi, phi)


def test_yoneda_bijection():
    for x in (EMPTY, TWO, X):
        elements = [yoneda_element(phi) for phi in iter_hom(representable(x), WALKING_ARROW)]
        assert sorted(elements) == list(evaluate(WALKING_ARROW, x).elements)


def test_iso_check_finds_isomorphism():
    q = Polynomial.from_directions({"p": ["u"], "q": ["v", "w"]})
    phi = iso_check(WALKING_ARROW, q)
    assert phi is not None and phi.is_isomorphism()
    assert phi.on_positions("a") == "q"


def test_iso_check_rejects_different_counts():
    assert iso_check(WALKING_ARROW, representable(TWO)) is None


def test_first_difference_reports_direction():
    maps = hom_set(WALKING_ARROW, WALKING_ARROW)
    identity = identity_map(WALKING_ARROW)
    assert first_difference(identity, identity) is None
    different = [phi for phi in maps if phi.on_positions == identity.on_positions and phi != identity]
    assert first_difference(identity, different[0]).startswith("direction")


@settings(max_examples=50, deadline=None)
@given(polys, polys, sets, sets)
def test_naturality(p, q, x, x_prime):
    # φ_X' ∘ p(h) = q(h) ∘ φ_X for every h: X -> X'
    for phi in list(iter_hom(p, q))[:8]:
        component = apply_map(phi, x)
        for h in enumerate_maps(x, x_prime):
            assert compose(_lift(q, h), component) == compose(apply_map(phi, x_prime), _lift(p, h))


def _lift(p: Polynomial, h: SetMap) -> SetMap:
    """``p(h): p(X) -> p(X')``"""
    table = {label: section_label(b, compose(h, g)) for label, (b, g) in evaluation_index(p, h.src).items()}
    return SetMap.from_mapping(evaluate(p, h.src), evaluate(p, h.dst), table)


@given(polys, sets)
def test_identity_acts_as_identity(p, x):
    component = apply_map(identity_map(p), x)
    assert is_bijection(component)
    assert all(a == b for a, b in component.items())


def some_map(data, p: Polynomial, q: Polynomial) -> PolyMap:
    maps = hom_set(p, q)
    assume(maps)
    return data.draw(st.sampled_from(maps))


@settings(max_examples=50, deadline=None)
@given(st.data(), polys, polys, polys, polys)
def test_compose_maps_is_associative(data, p, q, r, s):
    phi, psi, chi = some_map(data, p, q), some_map(data, q, r), some_map(data, r, s)
    assert compose_maps(chi, compose_maps(psi, phi)) == compose_maps(compose_maps(chi, psi), phi)


@settings(max_examples=50, deadline=None)
@given(st.data(), polys, polys)
def test_identity_maps_are_units(data, p, q):
    phi = some_map(data, p, q)
    assert compose_maps(identity_map(q), phi) == phi
    assert compose_maps(phi, identity_map(p)) == phi


def test_compose_maps_acts_on_evaluations():
    for phi in iter_hom(WALKING_ARROW, representable(TWO)):
        for psi in iter_hom(representable(TWO), WALKING_ARROW):
            assert apply_map(compose_maps(psi, phi), X) == compose(apply_map(psi, X), apply_map(phi, X))


def test_maps_from_y_pick_positions():
    for p in [WALKING_ARROW, *small_polynomials(2, 2)]:
        assert len(hom_set(identity_y(), p)) == hom_count(identity_y(), p) == len(p.positions)
