import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycat.finset.finite_sets import ValidationError
from polycat.simplex.delta import (MAX_BOUND, DeltaOpMap, Generator,
                                   IndexOutOfRange, MonotoneMap, NotInImage,
                                   compose_monotone, compose_op, degeneracy,
                                   e_inverse, e_on_map, e_on_word, e_plus,
                                   e_plus_object, face, family_instances,
                                   identity_monotone, identity_op,
                                   image_membership, monotone_maps,
                                   normal_form, transport_generator,
                                   verify_all, word_map)


@st.composite
def op_maps(draw, n: int, m: int) -> DeltaOpMap:
    values = draw(st.lists(st.integers(min_value=1, max_value=m), min_size=n, max_size=n))
    return DeltaOpMap(n, m, tuple(sorted(values)))


def test_face_and_degeneracy_values():
    assert face(2, 1).values == (0, 2)
    assert face(2, 0).values == (1, 2)
    assert degeneracy(1, 0).values == (0, 0, 1)
    assert face(0, 0) == MonotoneMap(-1, 0, ())


def test_face_index_checked():
    with pytest.raises(IndexOutOfRange) as e:
        face(2, 3)
    assert e.value.code == "index-out-of-range"


def test_monotone_map_validation():
    with pytest.raises(ValidationError) as e:
        MonotoneMap(1, 1, (1, 0))
    assert e.value.code == "not-monotone"
    with pytest.raises(IndexOutOfRange):
        MonotoneMap(1, 1, (0, 2))
    with pytest.raises(ValidationError) as e:
        DeltaOpMap(2, 3, (1,))
    assert e.value.code == "not-total"


def test_monotone_map_count():
    # C(n+m+1, m+1) maps [m] -> [n]
    assert len(list(monotone_maps(1, 2))) == 6
    assert len(list(monotone_maps(-1, 3))) == 1


def test_e_on_map_example():
    f = DeltaOpMap(2, 3, (1, 3))
    assert e_on_map(f) == MonotoneMap(3, 2, (0, 1, 1, 2))
    assert e_on_map(identity_op(3)) == identity_monotone(3)


def test_e_of_face_is_degeneracy():
    assert e_on_map(DeltaOpMap.from_delta(face(2, 1))) == degeneracy(2, 1)
    assert e_on_map(DeltaOpMap.from_delta(degeneracy(1, 0))) == face(3, 1)


def test_image_membership():
    assert image_membership(MonotoneMap(3, 2, (0, 1, 1, 2)))
    assert not image_membership(MonotoneMap(1, 1, (1, 1)))
    assert not image_membership(MonotoneMap(1, 1, (0, 0)))
    assert not image_membership(MonotoneMap(0, 0, (0,)))


def test_e_inverse():
    assert e_inverse(MonotoneMap(3, 2, (0, 1, 1, 2))) == DeltaOpMap(2, 3, (1, 3))


def test_e_inverse_outside_image():
    with pytest.raises(NotInImage) as e:
        e_inverse(MonotoneMap(1, 1, (1, 1)))
    assert e.value.code == "not-in-image"


def test_e_plus_on_empty_object():
    assert e_plus_object(-1) == 0
    assert e_plus(MonotoneMap(-1, 2, ())) == MonotoneMap(3, 0, (0, 0, 0, 0))
    assert e_plus(identity_monotone(-1)) == identity_monotone(0)
    with pytest.raises(IndexOutOfRange):
        e_plus_object(-2)


def test_transport_generator():
    assert transport_generator(Generator("d", 2, 1)) == Generator("s", 2, 1)
    assert transport_generator(Generator("s", 1, 0)) == Generator("d", 3, 1)
    assert transport_generator(Generator("id", 2)) == Generator("id", 3)


def test_e_on_word_reverses():
    word = (Generator("d", 2, 1), Generator("s", 1, 0))
    assert e_on_word(word) == (Generator("d", 3, 1), Generator("s", 2, 1))


def test_normal_form_example():
    f = MonotoneMap(2, 3, (0, 0, 2))
    word = normal_form(f)
    assert word == (Generator("d", 3, 3), Generator("d", 2, 1), Generator("s", 1, 0))
    assert word_map(word) == f
    assert normal_form(identity_monotone(2)) == (Generator("id", 2),)


def test_normal_form_reassembles_every_map():
    for m, n in itertools.product(range(0, 4), repeat=2):
        for f in monotone_maps(m, n):
            assert word_map(normal_form(f)) == f


def test_family_instance_counts():
    assert len(list(family_instances(1, 2))) == 3
    assert len(list(family_instances(1, 2, augmented=True))) == 4
    assert len(list(family_instances(3, 2))) == 6


def test_unknown_family():
    with pytest.raises(IndexOutOfRange):
        list(family_instances(6, 3))


def test_family_instances_hold():
    for k in range(1, 6):
        for inst in family_instances(k, 4, augmented=True):
            assert word_map(inst.left) == word_map(inst.right), inst


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_e_is_contravariantly_functorial(data, n, m, k):
    f = data.draw(op_maps(n, m))
    g = data.draw(op_maps(m, k))
    assert e_on_map(compose_op(g, f)) == compose_monotone(e_on_map(f), e_on_map(g))


def test_verify_all_small_bound():
    reports = verify_all(3)
    assert [r.name for r in reports] == [
        "functoriality",
        "faithfulness",
        "image",
        "generators",
        "identity_transport",
        "e_plus",
    ]
    for report in reports:
        assert report.passed, report.failure
        assert report.checked > 0


@pytest.mark.slow
def test_verify_all_default_bound():
    for report in verify_all(MAX_BOUND):
        assert report.passed, report.failure


def test_bound_is_capped():
    with pytest.raises(IndexOutOfRange) as e:
        verify_all(MAX_BOUND + 1)
    assert e.value.code == "bound-too-large"
