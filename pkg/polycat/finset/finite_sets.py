"""
- Finite sets of opaque labels with a canonical (sorted) element order
- Total maps between finite sets
- Finite category shapes and diagrams of finite sets over them
- Limits, colimits, pullbacks and sets of maps, computed by enumeration
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import (Dict, Iterable, Iterator, List, Mapping, NamedTuple,
                    Optional, Sequence, Tuple)

from polycat.finset.union_find import DisjointSet

logger = logging.getLogger(__name__)

# Characters used by the canonical label syntax of constructed elements
RESERVED_CHARACTERS = frozenset("(){},:")
IDENTITY_PREFIX = "id_"


class PolycatError(Exception):
    """Base error carrying a machine readable code and the location of the fault"""

    def __init__(self, message: str, code: str = "error", location: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.code = code
        self.location = location

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "location": self.location}


class ValidationError(PolycatError):
    pass


class ShapeError(ValidationError):
    pass


def tuple_label(parts: Iterable[str]) -> str:
    """Canonical label of a tuple of labels, e.g. ``(a,b)``"""
    return "(" + ",".join(parts) + ")"


def table_label(pairs: Iterable[Tuple[str, str]]) -> str:
    """Canonical label of an assignment table, e.g. ``{a:x,b:y}``"""
    return "{" + ",".join(f"{k}:{v}" for k, v in pairs) + "}"


def check_atomic_label(label: str, location: Optional[str] = None):
    """Rejects user supplied labels that could collide with constructed labels"""
    if not isinstance(label, str) or not label:
        raise ValidationError(
            f"Label {label!r} must be a non-empty string", code="bad-label", location=location
        )
    clash = sorted(RESERVED_CHARACTERS.intersection(label))
    if clash:
        raise ValidationError(
            f"Label {label!r} uses reserved characters {''.join(clash)}",
            code="bad-label",
            location=location or label,
        )


@dataclass(frozen=True)
class FinSet:
    """A finite set of distinct string labels, kept in sorted order"""

    elements: Tuple[str, ...] = ()

    def __post_init__(self):
        elements = tuple(self.elements)
        for x in elements:
            if not isinstance(x, str):
                raise ValidationError(
                    f"Set elements must be strings, got {x!r}", code="bad-label"
                )
        elements = tuple(sorted(elements))
        for a, b in zip(elements, elements[1:]):
            if a == b:
                raise ValidationError(
                    f"Duplicate label {a!r}", code="duplicate-label", location=a
                )
        object.__setattr__(self, "elements", elements)

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {x: i for i, x in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._positions

    def index(self, x: str) -> int:
        try:
            return self._positions[x]
        except KeyError:
            raise ValidationError(
                f"{x!r} is not an element of the set", code="not-an-element", location=x
            ) from None

    def __repr__(self) -> str:
        return "FinSet(" + repr(list(self.elements)) + ")"


EMPTY = FinSet()
POINT = FinSet(("*",))


@dataclass(frozen=True)
class SetMap:
    """A total map ``src -> dst``; ``assignment[k]`` is the image of ``src.elements[k]``"""

    src: FinSet
    dst: FinSet
    assignment: Tuple[str, ...]

    def __post_init__(self):
        assignment = tuple(self.assignment)
        if len(assignment) != len(self.src):
            raise ValidationError(
                "Map is not total on its source", code="not-total"
            )
        for x, y in zip(self.src.elements, assignment):
            if y not in self.dst:
                raise ValidationError(
                    f"{x!r} is sent to {y!r}, outside the target",
                    code="not-in-target",
                    location=x,
                )
        object.__setattr__(self, "assignment", assignment)

    @classmethod
    def from_mapping(cls, src: FinSet, dst: FinSet, mapping: Mapping[str, str]) -> "SetMap":
        extra = set(mapping) - set(src.elements)
        if extra:
            raise ValidationError(
                f"Map assigns labels outside its source: {sorted(extra)}",
                code="not-in-source",
                location=sorted(extra)[0],
            )
        missing = [x for x in src if x not in mapping]
        if missing:
            raise ValidationError(
                f"Map is not total, missing {missing}", code="not-total", location=missing[0]
            )
        return cls(src, dst, tuple(mapping[x] for x in src))

    def __call__(self, x: str) -> str:
        return self.assignment[self.src.index(x)]

    def items(self) -> Iterator[Tuple[str, str]]:
        return zip(self.src.elements, self.assignment)

    def as_dict(self) -> Dict[str, str]:
        return dict(self.items())

    @property
    def label(self) -> str:
        return table_label(self.items())

    def image(self) -> FinSet:
        return FinSet(set(self.assignment))

    def fiber(self, y: str) -> List[str]:
        return [x for x, v in self.items() if v == y]

    def restrict(self, subset: FinSet) -> "SetMap":
        return SetMap(subset, self.dst, tuple(self(x) for x in subset))


def identity(a: FinSet) -> SetMap:
    return SetMap(a, a, a.elements)


def compose(g: SetMap, f: SetMap) -> SetMap:
    """Returns ``g ∘ f``"""
    if f.dst != g.src:
        raise ShapeError(
            "Cannot compose maps: target of the first is not the source of the second",
            code="shape-mismatch",
        )
    return SetMap(f.src, g.dst, tuple(g(y) for y in f.assignment))


def is_injective(f: SetMap) -> bool:
    return len(set(f.assignment)) == len(f.assignment)


def is_bijection(f: SetMap) -> bool:
    return is_injective(f) and len(f.src) == len(f.dst)


def inverse(f: SetMap) -> SetMap:
    if not is_bijection(f):
        raise ValidationError("Map is not a bijection", code="not-bijective")
    return SetMap.from_mapping(f.dst, f.src, {y: x for x, y in f.items()})


def enumerate_maps(a: FinSet, b: FinSet) -> Iterator[SetMap]:
    """All total maps ``a -> b``, lexicographic in the images of ``a``'s elements"""
    for values in itertools.product(b.elements, repeat=len(a)):
        yield SetMap(a, b, values)


def map_set(a: FinSet, b: FinSet) -> FinSet:
    """The set of all maps ``a -> b``, each labeled by its assignment table"""
    return FinSet(tuple(f.label for f in enumerate_maps(a, b)))


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str


def identity_name(obj: str) -> str:
    return IDENTITY_PREFIX + obj


@dataclass(frozen=True)
class Shape:
    """A finite category: objects, non-identity arrows and a complete composition table

    ``composition`` holds triples ``(g, f, h)`` meaning ``g ∘ f = h``; ``h`` may be an
    identity, written ``id_<object>``. Every composable pair of non-identity arrows
    must be listed.
    """

    objects: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()
    composition: Tuple[Tuple[str, str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(
            self, "composition", tuple(sorted(tuple(t) for t in self.composition))
        )
        if len(set(self.objects)) != len(self.objects):
            raise ValidationError("Duplicate shape object", code="duplicate-label")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValidationError("Duplicate arrow name", code="duplicate-label")
        for a in self.arrows:
            if a.src not in self.objects or a.tgt not in self.objects:
                raise ShapeError(
                    f"Arrow {a.name!r} has an endpoint outside the shape",
                    code="shape-mismatch",
                    location=a.name,
                )
            if a.name.startswith(IDENTITY_PREFIX):
                raise ValidationError(
                    f"Arrow name {a.name!r} is reserved for identities",
                    code="bad-label",
                    location=a.name,
                )
        self._check_composition()

    @cached_property
    def _arrow_index(self) -> Dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def _table(self) -> Dict[Tuple[str, str], str]:
        return {(g, f): h for g, f, h in self.composition}

    def arrow(self, name: str) -> Arrow:
        if name.startswith(IDENTITY_PREFIX) and name[len(IDENTITY_PREFIX):] in self.objects:
            obj = name[len(IDENTITY_PREFIX):]
            return Arrow(name, obj, obj)
        try:
            return self._arrow_index[name]
        except KeyError:
            raise ShapeError(
                f"Unknown arrow {name!r}", code="unknown-arrow", location=name
            ) from None

    def is_identity(self, name: str) -> bool:
        return name not in self._arrow_index and self.arrow(name).src == self.arrow(name).tgt

    def compose_names(self, g: str, f: str) -> str:
        """Name of ``g ∘ f``"""
        if self.arrow(g).src != self.arrow(f).tgt:
            raise ShapeError(
                f"Arrows {g!r} and {f!r} are not composable", code="shape-mismatch"
            )
        if self.is_identity(g):
            return f
        if self.is_identity(f):
            return g
        return self._table[(g, f)]

    def _check_composition(self):
        table = {}
        for g, f, h in self.composition:
            ag, af, ah = self.arrow(g), self.arrow(f), self.arrow(h)
            if ag.src != af.tgt:
                raise ShapeError(
                    f"Composition entry {g}∘{f} is not composable",
                    code="shape-mismatch",
                    location=f"{g}∘{f}",
                )
            if ah.src != af.src or ah.tgt != ag.tgt:
                raise ShapeError(
                    f"Composite {h!r} of {g}∘{f} has the wrong endpoints",
                    code="shape-mismatch",
                    location=f"{g}∘{f}",
                )
            table[(g, f)] = h
        for g in self.arrows:
            for f in self.arrows:
                if g.src == f.tgt and (g.name, f.name) not in table:
                    raise ShapeError(
                        f"Composition table misses {g.name}∘{f.name}",
                        code="incomplete-composition",
                        location=f"{g.name}∘{f.name}",
                    )
        for h in self.arrows:
            for g in self.arrows:
                for f in self.arrows:
                    if h.src == g.tgt and g.src == f.tgt:
                        left = self.compose_names(self.compose_names(h.name, g.name), f.name)
                        right = self.compose_names(h.name, self.compose_names(g.name, f.name))
                        if left != right:
                            raise ShapeError(
                                f"Composition is not associative at {h.name}∘{g.name}∘{f.name}",
                                code="not-associative",
                                location=f"{h.name}∘{g.name}∘{f.name}",
                            )

    def opposite(self) -> "Shape":
        return Shape(
            objects=self.objects,
            arrows=tuple(Arrow(a.name, a.tgt, a.src) for a in self.arrows),
            composition=tuple((f, g, h) for g, f, h in self.composition),
        )


def discrete_shape(objects: Sequence[str]) -> Shape:
    return Shape(tuple(objects))


def parallel_shape(source: str = "src", target: str = "dst") -> Shape:
    """The walking parallel pair ``f, g: source ⇉ target``"""
    return Shape((source, target), (Arrow("f", source, target), Arrow("g", source, target)))


def cospan_shape() -> Shape:
    """``A -> X <- B``"""
    return Shape(("A", "B", "X"), (Arrow("f", "A", "X"), Arrow("g", "B", "X")))


@dataclass(frozen=True)
class FinDiagram:
    """A functor from a finite shape into finite sets"""

    shape: Shape
    sets: Tuple[FinSet, ...]
    maps: Tuple[SetMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.sets) != len(self.shape.objects) or len(self.maps) != len(self.shape.arrows):
            raise ShapeError("Diagram does not match its shape", code="shape-mismatch")
        for a, m in zip(self.shape.arrows, self.maps):
            if m.src != self.node(a.src) or m.dst != self.node(a.tgt):
                raise ShapeError(
                    f"Map on arrow {a.name!r} does not match its endpoints",
                    code="shape-mismatch",
                    location=a.name,
                )
        for g, f, h in self.shape.composition:
            if self.edge(h) != compose(self.edge(g), self.edge(f)):
                raise ValidationError(
                    f"Diagram is not functorial at {g}∘{f}",
                    code="not-functorial",
                    location=f"{g}∘{f}",
                )

    @classmethod
    def build(
        cls, shape: Shape, sets: Mapping[str, FinSet], maps: Mapping[str, SetMap]
    ) -> "FinDiagram":
        missing = [o for o in shape.objects if o not in sets]
        if missing:
            raise ShapeError(f"No set for objects {missing}", code="shape-mismatch", location=missing[0])
        missing = [a.name for a in shape.arrows if a.name not in maps]
        if missing:
            raise ShapeError(f"No map for arrows {missing}", code="shape-mismatch", location=missing[0])
        return cls(
            shape,
            tuple(sets[o] for o in shape.objects),
            tuple(maps[a.name] for a in shape.arrows),
        )

    def node(self, obj: str) -> FinSet:
        return self.sets[self.shape.objects.index(obj)]

    def edge(self, name: str) -> SetMap:
        arrow = self.shape.arrow(name)
        if self.shape.is_identity(name):
            return identity(self.node(arrow.src))
        return self.maps[self.shape.arrows.index(arrow)]


class Cone(NamedTuple):
    apex: FinSet
    legs: Dict[str, SetMap]


class Pullback(NamedTuple):
    apex: FinSet
    left: SetMap
    right: SetMap


def limit(d: FinDiagram) -> Cone:
    """The set of natural families ``(x_o)_o`` with projections onto every node

    Objects are assigned in shape order and every arrow is checked as soon as both of
    its endpoints carry a value.
    """
    objects = d.shape.objects
    order = {o: k for k, o in enumerate(objects)}
    checks: List[List[Tuple[int, SetMap, int]]] = [[] for _ in objects]
    for a, m in zip(d.shape.arrows, d.maps):
        s, t = order[a.src], order[a.tgt]
        checks[max(s, t)].append((s, m, t))

    families: List[Tuple[str, ...]] = []

    def extend(partial: List[str]):
        k = len(partial)
        if k == len(objects):
            families.append(tuple(partial))
            return
        for x in d.sets[k]:
            partial.append(x)
            if all(m(partial[s]) == partial[t] for s, m, t in checks[k]):
                extend(partial)
            partial.pop()

    extend([])
    labels = [tuple_label(f) for f in families]
    apex = FinSet(labels)
    legs = {
        o: SetMap.from_mapping(apex, d.sets[k], {lab: fam[k] for lab, fam in zip(labels, families)})
        for k, o in enumerate(objects)
    }
    logger.debug("Limit over %d objects has %d elements", len(objects), len(apex))
    return Cone(apex, legs)


def colimit(d: FinDiagram) -> Cone:
    """Quotient of the disjoint union of the nodes by ``x ~ F(a)(x)``

    Classes are labeled by their least member, members being labeled ``(object,x)``.
    """
    tagged = {
        o: {x: tuple_label((o, x)) for x in s} for o, s in zip(d.shape.objects, d.sets)
    }
    classes = DisjointSet(lab for table in tagged.values() for lab in table.values())
    for a, m in zip(d.shape.arrows, d.maps):
        for x, y in m.items():
            classes.union(tagged[a.src][x], tagged[a.tgt][y])
    representative = {}
    for group in classes.classes():
        for member in group:
            representative[member] = group[0]
    apex = FinSet(set(representative.values()))
    legs = {
        o: SetMap.from_mapping(
            s, apex, {x: representative[tagged[o][x]] for x in s}
        )
        for o, s in zip(d.shape.objects, d.sets)
    }
    logger.debug("Colimit over %d objects has %d elements", len(d.sets), len(apex))
    return Cone(apex, legs)


def product_sets(sets: Sequence[FinSet]) -> Cone:
    names = [str(k) for k in range(len(sets))]
    return limit(FinDiagram(discrete_shape(names), tuple(sets), ()))


def coproduct_sets(sets: Sequence[FinSet]) -> Cone:
    names = [str(k) for k in range(len(sets))]
    return colimit(FinDiagram(discrete_shape(names), tuple(sets), ()))


def pullback(f: SetMap, g: SetMap) -> Pullback:
    """Pairs ``(a,b)`` with ``f(a) = g(b)``"""
    if f.dst != g.dst:
        raise ShapeError(
            "Cannot form a pullback of maps with different targets", code="shape-mismatch"
        )
    pairs = [(a, b) for a in f.src for b in g.src if f(a) == g(b)]
    labels = [tuple_label(pair) for pair in pairs]
    apex = FinSet(labels)
    left = SetMap.from_mapping(apex, f.src, {lab: a for lab, (a, _) in zip(labels, pairs)})
    right = SetMap.from_mapping(apex, g.src, {lab: b for lab, (_, b) in zip(labels, pairs)})
    return Pullback(apex, left, right)


def coequalizer_sets(f: SetMap, g: SetMap) -> Tuple[FinSet, SetMap]:
    """Quotient of the common target by ``f(x) ~ g(x)``, classes named by their least member"""
    if f.src != g.src or f.dst != g.dst:
        raise ShapeError("Coequalizer needs parallel maps", code="shape-mismatch")
    classes = DisjointSet(f.dst.elements)
    for x in f.src:
        classes.union(f(x), g(x))
    representative = {}
    for group in classes.classes():
        for member in group:
            representative[member] = group[0]
    quotient = FinSet(set(representative.values()))
    return quotient, SetMap.from_mapping(f.dst, quotient, representative)


def _is_cone(d: FinDiagram, legs: Mapping[str, SetMap]) -> bool:
    return all(
        compose(m, legs[a.src]) == legs[a.tgt] for a, m in zip(d.shape.arrows, d.maps)
    )


def _is_cocone(d: FinDiagram, legs: Mapping[str, SetMap]) -> bool:
    return all(
        compose(legs[a.tgt], m) == legs[a.src] for a, m in zip(d.shape.arrows, d.maps)
    )


def mediating_maps(d: FinDiagram, apex: FinSet, legs: Mapping[str, SetMap]) -> List[SetMap]:
    """Every ``u: apex -> limit(d)`` with ``projection_o ∘ u = legs[o]`` for all objects"""
    if not _is_cone(d, legs):
        return []
    lim = limit(d)
    return [
        u
        for u in enumerate_maps(apex, lim.apex)
        if all(compose(lim.legs[o], u) == legs[o] for o in d.shape.objects)
    ]


def comediating_maps(d: FinDiagram, apex: FinSet, legs: Mapping[str, SetMap]) -> List[SetMap]:
    """Every ``u: colimit(d) -> apex`` with ``u ∘ injection_o = legs[o]`` for all objects"""
    if not _is_cocone(d, legs):
        return []
    colim = colimit(d)
    return [
        u
        for u in enumerate_maps(colim.apex, apex)
        if all(compose(u, colim.legs[o]) == legs[o] for o in d.shape.objects)
    ]


def cone_factorization(
    d: FinDiagram, apex: FinSet, legs: Mapping[str, SetMap]
) -> Optional[SetMap]:
    """The unique factorization of a cone through the limit, None if there is not exactly one"""
    found = mediating_maps(d, apex, legs)
    return found[0] if len(found) == 1 else None


def cocone_factorization(
    d: FinDiagram, apex: FinSet, legs: Mapping[str, SetMap]
) -> Optional[SetMap]:
    """The unique factorization of a cocone through the colimit, None if there is not exactly one"""
    found = comediating_maps(d, apex, legs)
    return found[0] if len(found) == 1 else None


class DistributivityReport(NamedTuple):
    holds: bool
    witness: SetMap


def distributivity_check(
    b: FinSet, b_prime: FinSet, m: Mapping[Tuple[str, str], FinSet]
) -> DistributivityReport:
    """Checks ``Π_b Σ_b' m(b,b') ≅ Σ_(f:B->B') Π_b m(b,f(b))`` through the canonical map

    The left side is built as families ``((b'_b, x_b))_b``, the right side as pairs
    ``(f, (x_b)_b)``; the witness sends a family to the map ``b ↦ b'_b`` and its values.
    """
    for x in b:
        for y in b_prime:
            if (x, y) not in m:
                raise ValidationError(
                    f"Table is not total, missing ({x},{y})", code="not-total", location=x
                )
    sums = [[(y, v) for y in b_prime for v in m[(x, y)]] for x in b]
    lhs = {tuple_label(tuple_label(pair) for pair in family): family for family in itertools.product(*sums)}

    rhs = []
    for f in enumerate_maps(b, b_prime):
        for values in itertools.product(*(m[(x, f(x))].elements for x in b)):
            rhs.append(tuple_label((f.label, tuple_label(values))))

    witness_table = {}
    for label, family in lhs.items():
        f = SetMap(b, b_prime, tuple(y for y, _ in family))
        witness_table[label] = tuple_label((f.label, tuple_label(v for _, v in family)))
    witness = SetMap.from_mapping(FinSet(lhs), FinSet(rhs), witness_table)
    return DistributivityReport(is_bijection(witness), witness)


class InterchangeReport(NamedTuple):
    holds: bool
    witness: SetMap


def _check_table(b: FinSet, b_prime: FinSet, m: Mapping[Tuple[str, str], FinSet]):
    for x in b:
        for y in b_prime:
            if (x, y) not in m:
                raise ValidationError(
                    f"Table is not total, missing ({x},{y})", code="not-total", location=x
                )


def _discrete_colimit(nodes: Mapping[str, FinSet]) -> Cone:
    names = list(nodes)
    return colimit(FinDiagram(discrete_shape(names), tuple(nodes[o] for o in names), ()))


def iterated_colimit_check(family: Mapping[str, Mapping[str, FinSet]]) -> InterchangeReport:
    """Checks ``colim_E q ≅ colim_(b in B) colim_(e in B_b) q(b,e)`` with ``E = Σ_b B_b``

    ``family[b][e]`` is the set ``q(b,e)``. Elements of ``E`` are labeled ``(b,e)``. The
    witness sends the image of ``x`` in ``q(b,e)`` under the one-step colimit to its
    image under the inner colimit at ``b`` followed by the outer one.

    Examples:
        >>> s = FinSet(("u", "v"))
        >>> iterated_colimit_check({"b": {"e1": s, "e2": s}, "c": {}}).holds
        True
    """
    outer = sorted(family)
    one_step = _discrete_colimit(
        {tuple_label((b, e)): q for b in outer for e, q in family[b].items()}
    )
    inner = {b: _discrete_colimit(family[b]) for b in outer}
    iterated = _discrete_colimit({b: inner[b].apex for b in outer})
    table = {}
    for b in outer:
        for e, q in family[b].items():
            leg = one_step.legs[tuple_label((b, e))]
            for x in q:
                table[leg(x)] = iterated.legs[b](inner[b].legs[e](x))
    witness = SetMap.from_mapping(one_step.apex, iterated.apex, table)
    return InterchangeReport(is_bijection(witness), witness)


def colimit_interchange_check(
    b: FinSet, b_prime: FinSet, m: Mapping[Tuple[str, str], FinSet]
) -> InterchangeReport:
    """Checks ``colim_B colim_B' m ≅ colim_B' colim_B m``

    Both sides are compared with the colimit over ``B × B'``; the witness goes from the
    first iterated colimit to the second through it.
    """
    _check_table(b, b_prime, m)
    rows = iterated_colimit_check({x: {y: m[(x, y)] for y in b_prime} for x in b})
    columns = iterated_colimit_check({y: {x: m[(x, y)] for x in b} for y in b_prime})
    if not (rows.holds and columns.holds):
        return InterchangeReport(False, rows.witness if not rows.holds else columns.witness)
    swap = SetMap.from_mapping(
        rows.witness.src,
        columns.witness.src,
        {
            tuple_label((tuple_label((x, y)), v)): tuple_label((tuple_label((y, x)), v))
            for x in b
            for y in b_prime
            for v in m[(x, y)]
        },
    )
    witness = compose(columns.witness, compose(swap, inverse(rows.witness)))
    return InterchangeReport(is_bijection(witness), witness)


def total_space_sets(b: FinSet, b_prime: FinSet, m: Mapping[Tuple[str, str], FinSet]) -> Tuple[FinSet, SetMap]:
    """``X = Σ_(b,b') m(b,b')`` with elements ``(b,b',v)`` and its projection onto ``B``"""
    _check_table(b, b_prime, m)
    elements = {tuple_label((x, y, v)): x for x in b for y in b_prime for v in m[(x, y)]}
    total = FinSet(tuple(elements))
    return total, SetMap.from_mapping(total, b, elements)


def sections_check(b: FinSet, b_prime: FinSet, m: Mapping[Tuple[str, str], FinSet]) -> InterchangeReport:
    """Checks ``Π_b Σ_b' m(b,b') ≅ Map_/B(B, X)``, the sections of ``X -> B``

    Sections are found among all maps ``B -> X``; the witness sends a family
    ``((b'_b, v_b))_b`` to the section ``b ↦ (b,b'_b,v_b)``.
    """
    total, projection = total_space_sets(b, b_prime, m)
    sections = [s for s in enumerate_maps(b, total) if compose(projection, s) == identity(b)]
    sums = [[(y, v) for y in b_prime for v in m[(x, y)]] for x in b]
    table = {}
    for family in itertools.product(*sums):
        section = SetMap(b, total, tuple(tuple_label((x, y, v)) for x, (y, v) in zip(b, family)))
        table[tuple_label(tuple_label(pair) for pair in family)] = section.label
    witness = SetMap.from_mapping(FinSet(tuple(table)), FinSet(tuple(s.label for s in sections)), table)
    return InterchangeReport(is_bijection(witness), witness)
