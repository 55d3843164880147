"""
- Products and limits of polynomials: limits on positions, colimits on directions
- Coproducts and coequalizers; general colimits as a coequalizer of coproducts
- Hom-set oracles for the universal properties
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

from polycat.finset.finite_sets import (Arrow, FinDiagram, FinSet, SetMap,
                                        Shape, ShapeError, ValidationError,
                                        coequalizer_sets, colimit,
                                        discrete_shape, identity,
                                        limit, tuple_label)
from polycat.poly.polynomial import (PolyMap, Polynomial, compose_maps,
                                     hom_count, identity_map, iter_hom)

logger = logging.getLogger(__name__)


class PolyCone(NamedTuple):
    """A (co)limit polynomial together with its projections (or injections), keyed by object"""

    polynomial: Polynomial
    legs: Dict[str, PolyMap]


@dataclass(frozen=True)
class PolyDiagram:
    """A functor from a finite shape into polynomials; checked for functoriality"""

    shape: Shape
    nodes: Tuple[Polynomial, ...]
    maps: Tuple[PolyMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.nodes) != len(self.shape.objects) or len(self.maps) != len(self.shape.arrows):
            raise ShapeError("Diagram does not match its shape", code="shape-mismatch")
        for a, phi in zip(self.shape.arrows, self.maps):
            if phi.src != self.node(a.src) or phi.dst != self.node(a.tgt):
                raise ShapeError(
                    f"Polynomial map on arrow {a.name!r} does not match its endpoints",
                    code="shape-mismatch",
                    location=a.name,
                )
        for g, f, h in self.shape.composition:
            if self.edge(h) != compose_maps(self.edge(g), self.edge(f)):
                raise ValidationError(
                    f"Diagram is not functorial at {g}∘{f}",
                    code="not-functorial",
                    location=f"{g}∘{f}",
                )

    @classmethod
    def build(
        cls, shape: Shape, nodes: Dict[str, Polynomial], maps: Dict[str, PolyMap]
    ) -> "PolyDiagram":
        missing = [o for o in shape.objects if o not in nodes]
        missing += [a.name for a in shape.arrows if a.name not in maps]
        if missing:
            raise ShapeError(
                f"Diagram misses {missing}", code="shape-mismatch", location=missing[0]
            )
        return cls(
            shape,
            tuple(nodes[o] for o in shape.objects),
            tuple(maps[a.name] for a in shape.arrows),
        )

    def node(self, obj: str) -> Polynomial:
        return self.nodes[self.shape.objects.index(obj)]

    def edge(self, name: str) -> PolyMap:
        arrow = self.shape.arrow(name)
        if self.shape.is_identity(name):
            return identity_map(self.node(arrow.src))
        return self.maps[self.shape.arrows.index(arrow)]

    def positions(self) -> FinDiagram:
        """The diagram of position sets"""
        return FinDiagram(
            self.shape,
            tuple(p.positions for p in self.nodes),
            tuple(phi.on_positions for phi in self.maps),
        )


def general_limit(d: PolyDiagram) -> PolyCone:
    """Limit of a finite diagram of polynomials

    Positions are the limit of the position sets. At a limit position with components
    ``b_o`` the directions are the colimit, over the opposite shape, of the sets
    ``p_o[b_o]`` connected by the ``φ♯`` maps.
    """
    positions = limit(d.positions())
    opposite = d.shape.opposite()
    fibers: List[FinSet] = []
    injections: Dict[str, Dict[str, SetMap]] = {o: {} for o in d.shape.objects}
    for b in positions.apex:
        at = {o: positions.legs[o](b) for o in d.shape.objects}
        fiber_diagram = FinDiagram(
            opposite,
            tuple(d.node(o)[at[o]] for o in d.shape.objects),
            tuple(phi.sharp(at[a.src]) for a, phi in zip(d.shape.arrows, d.maps)),
        )
        directions = colimit(fiber_diagram)
        fibers.append(directions.apex)
        for o in d.shape.objects:
            injections[o][b] = directions.legs[o]
    polynomial = Polynomial(positions.apex, tuple(fibers))
    legs = {
        o: PolyMap(
            polynomial,
            d.node(o),
            positions.legs[o],
            tuple(injections[o][b] for b in positions.apex),
        )
        for o in d.shape.objects
    }
    logger.debug("Limit over %d objects has %d positions", len(d.shape.objects), len(polynomial.positions))
    return PolyCone(polynomial, legs)


def product(p1: Polynomial, p2: Polynomial) -> Tuple[Polynomial, PolyMap, PolyMap]:
    """``p1 × p2``: positions ``(b1,b2)``, directions ``p1[b1] ⊔ p2[b2]`` tagged ``(0,e)``/``(1,e)``"""
    cone = general_limit(PolyDiagram(discrete_shape(["0", "1"]), (p1, p2), ()))
    return cone.polynomial, cone.legs["0"], cone.legs["1"]


def _tagged_coproduct(tags: Sequence[str], ps: Sequence[Polynomial]) -> PolyCone:
    positions, fibers = [], {}
    for tag, p in zip(tags, ps):
        for b, fiber in p.items():
            label = tuple_label((tag, b))
            positions.append(label)
            fibers[label] = fiber
    polynomial = Polynomial.from_directions({b: fibers[b].elements for b in positions})
    legs = {}
    for tag, p in zip(tags, ps):
        legs[tag] = PolyMap(
            p,
            polynomial,
            SetMap(p.positions, polynomial.positions, tuple(tuple_label((tag, b)) for b in p.positions)),
            tuple(identity(fiber) for fiber in p.fibers),
        )
    return PolyCone(polynomial, legs)


def coproduct(ps: Sequence[Polynomial]) -> PolyCone:
    """``Σ_i p_i``: positions ``(i,b)`` with ``i = 0, 1, ...``, directions inherited"""
    return _tagged_coproduct([str(k) for k in range(len(ps))], ps)


def _check_parallel(f: PolyMap, g: PolyMap):
    if f.src != g.src or f.dst != g.dst:
        raise ShapeError("Coequalizer needs parallel polynomial maps", code="shape-mismatch")


def coequalizer(f: PolyMap, g: PolyMap) -> Tuple[Polynomial, PolyMap]:
    """Coequalizer of ``f, g: p1 ⇉ p2`` with its structure map from ``p2``

    Positions are the quotient ``Q`` of ``B2`` by ``f₁(b1) ~ g₁(b1)``. The directions at
    a class ``c`` form the limit of the zigzag whose nodes are ``p2[b]`` for ``b`` in
    ``c`` and ``p1[b1]`` for every ``b1`` landing in ``c``, joined by ``f♯_b1`` and
    ``g♯_b1``.
    """
    _check_parallel(f, g)
    p1, p2 = f.src, f.dst
    quotient, q = coequalizer_sets(f.on_positions, g.on_positions)
    fibers, projections = [], {}
    for c in quotient:
        members = [b for b in p2.positions if q(b) == c]
        sources = [b1 for b1 in p1.positions if q(f.on_positions(b1)) == c]
        nodes = {tuple_label(("dst", b)): p2[b] for b in members}
        nodes.update({tuple_label(("src", b1)): p1[b1] for b1 in sources})
        arrows, maps = [], {}
        for b1 in sources:
            for name, phi in (("f", f), ("g", g)):
                arrow = Arrow(
                    tuple_label((name, b1)),
                    tuple_label(("dst", phi.on_positions(b1))),
                    tuple_label(("src", b1)),
                )
                arrows.append(arrow)
                maps[arrow.name] = phi.sharp(b1)
        shape = Shape(tuple(nodes), tuple(arrows))
        directions = limit(FinDiagram.build(shape, nodes, maps))
        fibers.append(directions.apex)
        for b in members:
            projections[b] = directions.legs[tuple_label(("dst", b))]
    polynomial = Polynomial(quotient, tuple(fibers))
    structure = PolyMap(p2, polynomial, q, tuple(projections[b] for b in p2.positions))
    logger.debug("Coequalizer has %d positions out of %d", len(quotient), len(p2.positions))
    return polynomial, structure


def general_colimit(d: PolyDiagram) -> PolyCone:
    """Colimit of a finite diagram as the coequalizer of ``Σ_(a:s->t) p_s ⇉ Σ_o p_o``

    One map sends ``(a, b)`` to ``(t, φ_a(b))`` and the other to ``(s, b)``.
    """
    nodes = _tagged_coproduct(d.shape.objects, d.nodes)
    names = [a.name for a in d.shape.arrows]
    arrows = _tagged_coproduct(names, [d.node(a.src) for a in d.shape.arrows])
    along, stay = {}, {}
    along_sharp, stay_sharp = {}, {}
    for a, phi in zip(d.shape.arrows, d.maps):
        for b in d.node(a.src).positions:
            label = tuple_label((a.name, b))
            along[label] = tuple_label((a.tgt, phi.on_positions(b)))
            along_sharp[label] = phi.sharp(b).as_dict()
            stay[label] = tuple_label((a.src, b))
            stay_sharp[label] = {e: e for e in d.node(a.src)[b]}
    f = PolyMap.from_tables(arrows.polynomial, nodes.polynomial, along, along_sharp)
    g = PolyMap.from_tables(arrows.polynomial, nodes.polynomial, stay, stay_sharp)
    polynomial, structure = coequalizer(f, g)
    legs = {o: compose_maps(structure, nodes.legs[o]) for o in d.shape.objects}
    return PolyCone(polynomial, legs)


def _bijective_onto(images: Iterable, expected: set) -> bool:
    seen = set()
    for image in images:
        if image in seen or image not in expected:
            return False
        seen.add(image)
    return seen == expected


def universal_property_check(
    candidate: Polynomial,
    cocone: PolyMap,
    f: PolyMap,
    g: PolyMap,
    against: Iterable[Polynomial],
) -> bool:
    """For every ``r`` in ``against``, ``ψ ↦ ψ ∘ cocone`` must be a bijection from ``Hom(candidate, r)``
    onto the maps ``χ: p2 -> r`` with ``χ ∘ f = χ ∘ g``
    """
    _check_parallel(f, g)
    if cocone.src != f.dst or cocone.dst != candidate:
        raise ShapeError("Cocone does not go from the target of f to the candidate", code="shape-mismatch")
    for r in against:
        equalizing = {
            chi for chi in iter_hom(f.dst, r) if compose_maps(chi, f) == compose_maps(chi, g)
        }
        images = (compose_maps(psi, cocone) for psi in iter_hom(candidate, r))
        if not _bijective_onto(images, equalizing):
            logger.info("Universal property fails against %s", r)
            return False
    return True


def product_universal_check(p1: Polynomial, p2: Polynomial, against: Iterable[Polynomial]) -> bool:
    """``ψ ↦ (π1 ∘ ψ, π2 ∘ ψ)`` must be a bijection ``Hom(r, p1 × p2) -> Hom(r, p1) × Hom(r, p2)``"""
    prod, pi1, pi2 = product(p1, p2)
    for r in against:
        pairs = [(compose_maps(pi1, psi), compose_maps(pi2, psi)) for psi in iter_hom(r, prod)]
        if len(set(pairs)) != len(pairs) or len(pairs) != hom_count(r, p1) * hom_count(r, p2):
            logger.info("Product universal property fails against %s", r)
            return False
    return True


def coproduct_universal_check(ps: Sequence[Polynomial], against: Iterable[Polynomial]) -> bool:
    """``ψ ↦ (ψ ∘ ι_i)_i`` must be a bijection ``Hom(Σ p_i, r) -> Π_i Hom(p_i, r)``"""
    cone = coproduct(ps)
    injections = [cone.legs[str(k)] for k in range(len(ps))]
    for r in against:
        families = [
            tuple(compose_maps(psi, iota) for iota in injections)
            for psi in iter_hom(cone.polynomial, r)
        ]
        expected = 1
        for p in ps:
            expected *= hom_count(p, r)
        if len(set(families)) != len(families) or len(families) != expected:
            logger.info("Coproduct universal property fails against %s", r)
            return False
    return True


def limit_universal_check(d: PolyDiagram, against: Iterable[Polynomial]) -> bool:
    """``ψ ↦ (π_o ∘ ψ)_o`` must be a bijection from ``Hom(r, lim d)`` onto the cones over ``d`` with apex ``r``"""
    cone = general_limit(d)
    objects = d.shape.objects
    for r in against:
        cones = set()
        for family in itertools.product(*(list(iter_hom(r, d.node(o))) for o in objects)):
            legs = dict(zip(objects, family))
            if all(compose_maps(phi, legs[a.src]) == legs[a.tgt] for a, phi in zip(d.shape.arrows, d.maps)):
                cones.add(family)
        images = (
            tuple(compose_maps(cone.legs[o], psi) for o in objects)
            for psi in iter_hom(r, cone.polynomial)
        )
        if not _bijective_onto(images, cones):
            logger.info("Limit universal property fails against %s", r)
            return False
    return True


def colimit_universal_check(d: PolyDiagram, against: Iterable[Polynomial]) -> bool:
    """``ψ ↦ (ψ ∘ ι_o)_o`` must be a bijection from ``Hom(colim d, r)`` onto the cocones under ``d``"""
    cone = general_colimit(d)
    objects = d.shape.objects
    for r in against:
        cocones = set()
        for family in itertools.product(*(list(iter_hom(d.node(o), r)) for o in objects)):
            legs = dict(zip(objects, family))
            if all(compose_maps(legs[a.tgt], phi) == legs[a.src] for a, phi in zip(d.shape.arrows, d.maps)):
                cocones.add(family)
        images = (
            tuple(compose_maps(psi, cone.legs[o]) for o in objects)
            for psi in iter_hom(cone.polynomial, r)
        )
        if not _bijective_onto(images, cocones):
            logger.info("Colimit universal property fails against %s", r)
            return False
    return True
