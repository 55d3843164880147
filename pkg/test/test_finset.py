import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from polycat.finset.finite_sets import (EMPTY, POINT, Arrow, FinDiagram,
                                        FinSet, SetMap, Shape, ShapeError,
                                        ValidationError, check_atomic_label,
                                        cocone_factorization, colimit,
                                        colimit_interchange_check, compose,
                                        cone_factorization, coproduct_sets,
                                        cospan_shape, coequalizer_sets,
                                        discrete_shape, distributivity_check,
                                        enumerate_maps, identity, inverse,
                                        is_bijection, iterated_colimit_check,
                                        limit, map_set, parallel_shape,
                                        product_sets, pullback, sections_check,
                                        total_space_sets)
from polycat.finset.union_find import DisjointSet

A = FinSet(("a", "b"))
X = FinSet(("x", "y", "z"))


def finset(n: int, prefix: str = "s") -> FinSet:
    return FinSet(tuple(f"{prefix}{k}" for k in range(n)))


small_sets = st.integers(min_value=0, max_value=3).map(finset)


def test_finset_is_sorted_and_indexed():
    s = FinSet(("c", "a", "b"))
    assert s.elements == ("a", "b", "c")
    assert s.index("b") == 1
    assert "c" in s and "d" not in s
    assert len(EMPTY) == 0 and len(POINT) == 1


def test_finset_rejects_duplicates():
    with pytest.raises(ValidationError) as e:
        FinSet(("a", "a"))
    assert e.value.code == "duplicate-label"


def test_setmap_must_be_total():
    with pytest.raises(ValidationError) as e:
        SetMap.from_mapping(A, X, {"a": "x"})
    assert e.value.code == "not-total"


def test_setmap_rejects_values_outside_target():
    with pytest.raises(ValidationError) as e:
        SetMap.from_mapping(A, X, {"a": "x", "b": "w"})
    assert e.value.code == "not-in-target"


def test_reserved_characters_rejected():
    for bad in ("(a", "a,b", "k:v", "{}"):
        with pytest.raises(ValidationError):
            check_atomic_label(bad)
    check_atomic_label("id_a")


def test_map_set_size_and_order():
    maps = map_set(A, X)
    assert len(maps) == 9
    assert maps.elements[0] == "{a:x,b:x}"
    assert [f.label for f in enumerate_maps(A, X)] == list(maps.elements)


def test_map_set_from_empty_is_a_point():
    assert len(map_set(EMPTY, X)) == 1
    assert len(map_set(A, EMPTY)) == 0


def test_compose_and_identity():
    f = SetMap.from_mapping(A, X, {"a": "x", "b": "z"})
    g = SetMap.from_mapping(X, A, {"x": "b", "y": "a", "z": "a"})
    assert compose(g, f).as_dict() == {"a": "b", "b": "a"}
    assert compose(f, identity(A)) == f
    assert compose(identity(X), f) == f


def test_inverse_of_bijection():
    swap = SetMap.from_mapping(A, A, {"a": "b", "b": "a"})
    assert is_bijection(swap)
    assert compose(inverse(swap), swap) == identity(A)


def test_product_and_coproduct_sizes():
    assert len(product_sets([A, X]).apex) == 6
    assert len(coproduct_sets([A, X]).apex) == 5
    assert "(a,x)" in product_sets([A, X]).apex
    assert "(0,a)" in coproduct_sets([A, X]).apex


def test_pullback_labels():
    f = SetMap.from_mapping(A, POINT, {"a": "*", "b": "*"})
    g = SetMap.from_mapping(X, POINT, {x: "*" for x in X})
    square = pullback(f, g)
    assert len(square.apex) == 6
    assert square.left("(a,y)") == "a"
    assert square.right("(a,y)") == "y"


def test_pullback_needs_common_target():
    f = identity(A)
    g = identity(X)
    with pytest.raises(ShapeError):
        pullback(f, g)


def test_coequalizer_names_classes_by_least_member():
    f = SetMap.from_mapping(A, X, {"a": "y", "b": "z"})
    g = SetMap.from_mapping(A, X, {"a": "z", "b": "z"})
    quotient, q = coequalizer_sets(f, g)
    assert quotient.elements == ("x", "y")
    assert q.as_dict() == {"x": "x", "y": "y", "z": "y"}


def test_limit_of_cospan_is_pullback():
    f = SetMap.from_mapping(A, X, {"a": "x", "b": "y"})
    g = SetMap.from_mapping(X, X, {"x": "x", "y": "x", "z": "y"})
    d = FinDiagram.build(cospan_shape(), {"A": A, "B": X, "X": X}, {"f": f, "g": g})
    cone = limit(d)
    assert len(cone.apex) == len(pullback(f, g).apex) == 3
    for label in cone.apex:
        assert f(cone.legs["A"](label)) == cone.legs["X"](label) == g(cone.legs["B"](label))


def test_colimit_of_parallel_pair_is_coequalizer():
    f = SetMap.from_mapping(A, X, {"a": "x", "b": "y"})
    g = SetMap.from_mapping(A, X, {"a": "y", "b": "y"})
    d = FinDiagram.build(parallel_shape(), {"src": A, "dst": X}, {"f": f, "g": g})
    cone = colimit(d)
    quotient, _ = coequalizer_sets(f, g)
    assert len(cone.apex) == len(quotient) == 2


def test_diagram_functoriality_checked():
    shape = Shape(
        ("A", "B", "C"),
        (Arrow("f", "A", "B"), Arrow("g", "B", "C"), Arrow("h", "A", "C")),
        (("g", "f", "h"),),
    )
    f = SetMap.from_mapping(A, A, {"a": "b", "b": "a"})
    g = identity(A)
    with pytest.raises(ValidationError) as e:
        FinDiagram.build(shape, {"A": A, "B": A, "C": A}, {"f": f, "g": g, "h": identity(A)})
    assert e.value.code == "not-functorial"
    FinDiagram.build(shape, {"A": A, "B": A, "C": A}, {"f": f, "g": g, "h": f})


def test_identity_arrow_name_is_reserved():
    with pytest.raises(ValidationError):
        Shape(("A",), (Arrow("id_A", "A", "A"),))


def test_opposite_shape_swaps_arrows():
    op = cospan_shape().opposite()
    assert op.arrow("f").src == "X" and op.arrow("f").tgt == "A"


def test_cone_factorization_is_unique():
    d = FinDiagram(discrete_shape(["0", "1"]), (A, X), ())
    legs = {"0": SetMap.from_mapping(POINT, A, {"*": "b"}), "1": SetMap.from_mapping(POINT, X, {"*": "z"})}
    u = cone_factorization(d, POINT, legs)
    assert u is not None and u("*") == "(b,z)"


def test_cocone_factorization_is_unique():
    d = FinDiagram(discrete_shape(["0", "1"]), (A, X), ())
    legs = {"0": SetMap.from_mapping(A, POINT, {"a": "*", "b": "*"}), "1": SetMap.from_mapping(X, POINT, {x: "*" for x in X})}
    u = cocone_factorization(d, POINT, legs)
    assert u is not None
    assert set(u.as_dict().values()) == {"*"}


@given(small_sets, small_sets)
def test_map_set_cardinality(a, b):
    assert len(map_set(a, b)) == len(b) ** len(a)


@given(small_sets, small_sets)
def test_product_universal_property(a, b):
    d = FinDiagram(discrete_shape(["0", "1"]), (a, b), ())
    for x, y in itertools.product(a, b):
        legs = {"0": SetMap(POINT, a, (x,)), "1": SetMap(POINT, b, (y,))}
        assert cone_factorization(d, POINT, legs) is not None


def test_distributivity_small():
    b, b_prime = finset(2, "b"), finset(2, "c")
    m = {(x, y): finset((i + j) % 3, "v") for i, x in enumerate(b) for j, y in enumerate(b_prime)}
    report = distributivity_check(b, b_prime, m)
    assert report.holds


@pytest.mark.slow
def test_distributivity_exhaustive():
    for nb, nb_prime in itertools.product(range(4), repeat=2):
        b, b_prime = finset(nb, "b"), finset(nb_prime, "c")
        pairs = [(x, y) for x in b for y in b_prime]
        if len(pairs) <= 4:
            tables = itertools.product(range(4), repeat=len(pairs))
        else:
            tables = ((s,) * len(pairs) for s in range(4))
        for sizes in tables:
            m = {pair: finset(n, "v") for pair, n in zip(pairs, sizes)}
            assert distributivity_check(b, b_prime, m).holds


def test_disjoint_set_classes():
    ds = DisjointSet(["d", "c", "b", "a"])
    ds.union("d", "a")
    ds.union("c", "b")
    assert ds.classes() == [["a", "d"], ["b", "c"]]
    assert ds.find("a") == ds.find("d")


def _chain_shape() -> Shape:
    return Shape(
        ("A", "B", "C"),
        (Arrow("f", "A", "B"), Arrow("g", "B", "C"), Arrow("h", "A", "C")),
        (("g", "f", "h"),),
    )


SHAPES = [
    discrete_shape(["A"]),
    discrete_shape(["A", "B", "C", "D"]),
    parallel_shape(),
    cospan_shape(),
    cospan_shape().opposite(),
    _chain_shape(),
]


def random_map(data, src: FinSet, dst: FinSet) -> SetMap:
    return SetMap(src, dst, tuple(data.draw(st.sampled_from(dst.elements)) for _ in src))


def random_diagram(data) -> FinDiagram:
    shape = data.draw(st.sampled_from(SHAPES))
    targets = {a.tgt for a in shape.arrows}
    sets = {
        o: finset(data.draw(st.integers(min_value=1 if o in targets else 0, max_value=4)), o.lower())
        for o in shape.objects
    }
    composites = {h: (g, f) for g, f, h in shape.composition}
    maps = {}
    for a in shape.arrows:
        if a.name in composites:
            continue
        maps[a.name] = random_map(data, sets[a.src], sets[a.tgt])
    for h, (g, f) in composites.items():
        maps[h] = compose(maps[g], maps[f])
    return FinDiagram.build(shape, sets, maps)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_every_cone_factors_uniquely(data):
    d = random_diagram(data)
    lim = limit(d)
    apex = finset(data.draw(st.integers(min_value=0, max_value=2)), "p")
    assume(len(apex) == 0 or len(lim.apex) > 0)
    assume(len(lim.apex) ** len(apex) <= 4096)
    u = random_map(data, apex, lim.apex)
    legs = {o: compose(lim.legs[o], u) for o in d.shape.objects}
    assert cone_factorization(d, apex, legs) == u


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_every_cocone_factors_uniquely(data):
    d = random_diagram(data)
    colim = colimit(d)
    apex = finset(data.draw(st.integers(min_value=1, max_value=2)), "p")
    assume(len(apex) ** len(colim.apex) <= 4096)
    u = random_map(data, colim.apex, apex)
    legs = {o: compose(u, colim.legs[o]) for o in d.shape.objects}
    assert cocone_factorization(d, apex, legs) == u


def test_non_cone_does_not_factor():
    f = SetMap.from_mapping(A, X, {"a": "x", "b": "y"})
    g = SetMap.from_mapping(A, X, {"a": "x", "b": "x"})
    d = FinDiagram.build(parallel_shape(), {"src": A, "dst": X}, {"f": f, "g": g})
    legs = {"src": SetMap(POINT, A, ("b",)), "dst": SetMap(POINT, X, ("y",))}
    assert cone_factorization(d, POINT, legs) is None


def test_equalizer_of_distinct_constants_is_empty():
    f = SetMap.from_mapping(A, X, {"a": "x", "b": "x"})
    g = SetMap.from_mapping(A, X, {"a": "y", "b": "y"})
    d = FinDiagram.build(parallel_shape(), {"src": A, "dst": X}, {"f": f, "g": g})
    assert len(limit(d).apex) == 0


def test_coequalizer_of_identity_and_swap_is_a_point():
    swap = SetMap.from_mapping(A, A, {"a": "b", "b": "a"})
    quotient, q = coequalizer_sets(identity(A), swap)
    assert quotient.elements == ("a",)
    assert q.as_dict() == {"a": "a", "b": "a"}


def test_empty_diagram():
    d = FinDiagram(discrete_shape([]), (), ())
    assert len(limit(d).apex) == 1
    assert len(colimit(d).apex) == 0


def test_one_node_diagram_is_its_own_limit_and_colimit():
    d = FinDiagram(discrete_shape(["A"]), (X,), ())
    lim, colim = limit(d), colimit(d)
    assert is_bijection(lim.legs["A"]) and lim.legs["A"].dst == X
    assert is_bijection(colim.legs["A"]) and colim.legs["A"].src == X


def set_table(nb: int, nb_prime: int, sizes) -> tuple:
    b, b_prime = finset(nb, "b"), finset(nb_prime, "c")
    pairs = [(x, y) for x in b for y in b_prime]
    return b, b_prime, {pair: finset(n, "v") for pair, n in zip(pairs, sizes)}


def test_iterated_colimit_example():
    s = FinSet(("u", "v"))
    report = iterated_colimit_check({"b": {"e1": s, "e2": POINT}, "c": {}, "d": {"e1": s}})
    assert report.holds
    assert len(report.witness.src) == len(report.witness.dst) == 5
    assert report.witness("((b,e2),*)") == "(b,(e2,*))"


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.sampled_from(["b0", "b1", "b2"]), st.dictionaries(st.sampled_from(["e0", "e1", "e2"]), small_sets)))
def test_iterated_colimit_matches_one_step(family):
    assert iterated_colimit_check(family).holds


def test_colimit_interchange_example():
    b, b_prime, m = set_table(2, 3, [1, 0, 2, 3, 1, 0])
    report = colimit_interchange_check(b, b_prime, m)
    assert report.holds
    assert len(report.witness.src) == 7
    assert report.witness("(b0,(c2,v1))") == "(c2,(b0,v1))"


def test_sections_of_total_space_example():
    b, b_prime, m = set_table(2, 2, [1, 2, 0, 1])
    total, projection = total_space_sets(b, b_prime, m)
    assert len(total) == 4 and projection("(b0,c1,v1)") == "b0"
    report = sections_check(b, b_prime, m)
    assert report.holds
    assert len(report.witness.dst) == 3


def test_interchange_tables_must_be_total():
    b, b_prime = finset(1, "b"), finset(1, "c")
    with pytest.raises(ValidationError) as e:
        colimit_interchange_check(b, b_prime, {})
    assert e.value.code == "not-total"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.lists(st.integers(0, 3), min_size=9, max_size=9))
def test_set_level_interchange_laws(nb, nb_prime, sizes):
    b, b_prime, m = set_table(nb, nb_prime, sizes)
    assert colimit_interchange_check(b, b_prime, m).holds
    assert distributivity_check(b, b_prime, m).holds
    if nb <= 2:
        assert sections_check(b, b_prime, m).holds
