"""Named small categories used as the standing corpus for comonoid and nerve checks"""

from typing import Dict, List, Mapping, Sequence, Tuple

from polycat.comonad.category import Category
from polycat.finset.finite_sets import ValidationError


def terminal() -> Category:
    return Category.build(["*"], [("id_*", "*", "*")], {"*": "id_*"}, {("id_*", "id_*"): "id_*"})


def discrete(n: int) -> Category:
    objects = [f"o{k}" for k in range(n)]
    return Category.build(
        objects,
        [(f"id_{o}", o, o) for o in objects],
        {o: f"id_{o}" for o in objects},
        {(f"id_{o}", f"id_{o}"): f"id_{o}" for o in objects},
    )


def monoid(elements: Sequence[str], unit: str, product: Mapping[Tuple[str, str], str]) -> Category:
    """One-object category on ``elements``; ``product[(g, f)]`` is ``g ∘ f``"""
    if unit not in elements:
        raise ValidationError(f"Unit {unit!r} is not an element", code="bad-identity", location=unit)
    return Category.build(
        ["*"],
        [(m, "*", "*") for m in elements],
        {"*": unit},
        {(g, f): product[(g, f)] for g in elements for f in elements},
    )


def cyclic_group(n: int) -> Category:
    """``Z/n`` with elements ``e, a1, ..., a(n-1)``"""
    names = ["e"] + [f"a{k}" for k in range(1, n)]
    return monoid(
        names, "e", {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    )


def idempotent_monoid() -> Category:
    """``{e, z}`` with ``z ∘ z = z``"""
    return monoid(["e", "z"], "e", {("e", "e"): "e", ("e", "z"): "z", ("z", "e"): "z", ("z", "z"): "z"})


def left_zero_monoid() -> Category:
    """``{e, l, r}`` with ``x ∘ y = x`` for ``x, y`` in ``{l, r}``; not commutative"""
    elements = ["e", "l", "r"]
    product = {}
    for g in elements:
        for f in elements:
            product[(g, f)] = f if g == "e" else g
    return monoid(elements, "e", product)


def chain(n: int) -> Category:
    """The poset ``0 < 1 < ... < n-1``; the arrow ``i -> j`` is named ``i<=j``"""
    objects = [str(k) for k in range(n)]
    morphisms = [(f"{i}<={j}", str(i), str(j)) for i in range(n) for j in range(i, n)]
    composition = {
        (f"{j}<={k}", f"{i}<={j}"): f"{i}<={k}"
        for i in range(n)
        for j in range(i, n)
        for k in range(j, n)
    }
    return Category.build(objects, morphisms, {o: f"{o}<={o}" for o in objects}, composition)


def walking_arrow() -> Category:
    """``a --f--> b``"""
    return Category.build(
        ["a", "b"],
        [("id_a", "a", "a"), ("f", "a", "b"), ("id_b", "b", "b")],
        {"a": "id_a", "b": "id_b"},
        {
            ("id_a", "id_a"): "id_a",
            ("f", "id_a"): "f",
            ("id_b", "f"): "f",
            ("id_b", "id_b"): "id_b",
        },
    )


def free_isomorphism() -> Category:
    """``u: a -> b`` and ``v: b -> a`` inverse to each other"""
    return Category.build(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("u", "a", "b"), ("v", "b", "a")],
        {"a": "id_a", "b": "id_b"},
        {
            ("id_a", "id_a"): "id_a",
            ("id_b", "id_b"): "id_b",
            ("u", "id_a"): "u",
            ("id_b", "u"): "u",
            ("v", "id_b"): "v",
            ("id_a", "v"): "v",
            ("v", "u"): "id_a",
            ("u", "v"): "id_b",
        },
    )


def span_with_endomorphism() -> Category:
    """Three objects ``x, y, z`` with ``f: x -> y``, ``g: y -> z``, ``h, k: x -> z``, ``g ∘ f = h``
    and an idempotent ``t: y -> y`` with ``t ∘ f = f`` and ``g ∘ t = g``
    """
    composition: Dict[Tuple[str, str], str] = {
        ("g", "f"): "h",
        ("t", "f"): "f",
        ("g", "t"): "g",
        ("t", "t"): "t",
    }
    morphisms = [
        ("id_x", "x", "x"),
        ("id_y", "y", "y"),
        ("id_z", "z", "z"),
        ("f", "x", "y"),
        ("g", "y", "z"),
        ("h", "x", "z"),
        ("k", "x", "z"),
        ("t", "y", "y"),
    ]
    ends = {name: (s, t) for name, s, t in morphisms}
    for name, (s, t) in ends.items():
        composition[(f"id_{t}", name)] = name
        composition[(name, f"id_{s}")] = name
    return Category.build(["x", "y", "z"], morphisms, {o: f"id_{o}" for o in "xyz"}, composition)


def corpus() -> Dict[str, Category]:
    """The standing corpus, keyed by name"""
    return {
        "terminal": terminal(),
        "discrete_2": discrete(2),
        "discrete_3": discrete(3),
        "z2": cyclic_group(2),
        "z3": cyclic_group(3),
        "idempotent": idempotent_monoid(),
        "left_zero": left_zero_monoid(),
        "walking_arrow": walking_arrow(),
        "chain_3": chain(3),
        "free_isomorphism": free_isomorphism(),
        "span_with_endomorphism": span_with_endomorphism(),
    }


def corpus_names() -> List[str]:
    return sorted(corpus())
