"""
- Polynomial comonoids ``(p, ε, δ)`` and their unit and associativity laws
- Translation between comonoids and small categories, both ways
- Retrofunctors: carrier maps commuting with counits and comultiplications
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, NamedTuple, Optional, Tuple

from polycat.comonad.category import Category, check_category
from polycat.finset.finite_sets import (FinSet, SetMap, ShapeError,
                                        ValidationError, tuple_label)
from polycat.monoidal.composition import (associator, composite_index,
                                          compose, direction_label, horizontal,
                                          left_unitor, position_label,
                                          right_unitor, whisker_left,
                                          whisker_right)
from polycat.poly.polynomial import (PolyMap, Polynomial, compose_maps,
                                     first_difference, identity_map,
                                     identity_y)

logger = logging.getLogger(__name__)


class LawViolation(ValidationError):
    def __init__(self, message: str, location: Optional[str] = None, code: str = "law-violation"):
        super().__init__(message, code=code, location=location)


class SectionError(LawViolation):
    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(message, location=location, code="not-a-section")


@dataclass(frozen=True)
class Comonoid:
    """A polynomial ``p`` with counit ``ε: p -> y`` and comultiplication ``δ: p -> p ∘ p``"""

    carrier: Polynomial
    counit: PolyMap
    comultiplication: PolyMap

    def __post_init__(self):
        p = self.carrier
        if self.counit.src != p or self.counit.dst != identity_y():
            raise ShapeError("Counit must go from the carrier to y", code="shape-mismatch", location="counit")
        if self.comultiplication.src != p or self.comultiplication.dst != compose(p, p):
            raise ShapeError(
                "Comultiplication must go from the carrier to its self-composite",
                code="shape-mismatch",
                location="comultiplication",
            )

    def unit(self, b: str) -> str:
        """The direction ``ε♯_b(*)`` picked at ``b``"""
        return self.counit.sharp(b)("*")

    def spread(self, b: str) -> Tuple[str, SetMap]:
        """``δ₁(b)`` decoded as ``(b', f: p[b'] -> B)``"""
        index = composite_index(self.carrier, self.carrier)
        return index.positions[self.comultiplication.on_positions(b)]

    def merge(self, b: str, i: str, d: str) -> str:
        """``δ♯_b((i, d))``"""
        return self.comultiplication.sharp(b)(direction_label(i, d))


class LawReport(NamedTuple):
    unit_left: bool
    unit_right: bool
    assoc: bool
    location: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.unit_left and self.unit_right and self.assoc

    def to_dict(self) -> dict:
        return {
            "unit_left": self.unit_left,
            "unit_right": self.unit_right,
            "assoc": self.assoc,
            "location": self.location,
        }


def _unit_left_failure(c: Comonoid, b: str) -> Optional[str]:
    b1, f1 = c.spread(b)
    i = c.unit(b1)
    if f1(i) != b:
        return f"position {b}"
    for e in c.carrier[b]:
        if c.merge(b, i, e) != e:
            return f"direction {direction_label('*', e)} at {b}"
    return None


def _unit_right_failure(c: Comonoid, b: str) -> Optional[str]:
    b1, f1 = c.spread(b)
    if b1 != b:
        return f"position {b}"
    for e in c.carrier[b]:
        if c.merge(b, e, c.unit(f1(e))) != e:
            return f"direction {direction_label(e, '*')} at {b}"
    return None


def _assoc_failure(c: Comonoid, b: str) -> Optional[str]:
    p = c.carrier
    b1, f1 = c.spread(b)
    b2, g = c.spread(b1)
    if b2 != b1:
        return f"position {b}"
    for i in p[b1]:
        c2, f2 = c.spread(f1(i))
        if g(i) != c2:
            return f"position {b}"
        for j in p[c2]:
            if f1(c.merge(b1, i, j)) != f2(j):
                return f"position {b}"
    for i in p[b1]:
        c2, f2 = c.spread(f1(i))
        for j in p[c2]:
            for k in p[f2(j)]:
                if c.merge(b, c.merge(b1, i, j), k) != c.merge(b, i, c.merge(f1(i), j, k)):
                    return f"direction {direction_label(i, direction_label(j, k))} at {b}"
    return None


def check_laws(c: Comonoid) -> LawReport:
    """Evaluates both unit triangles and the associativity square at every position

    Each law compares two maps out of ``p`` whose values at ``b`` only depend on
    ``δ`` and ``ε`` near ``δ₁(b)``, so both sides are computed at ``b`` without
    building ``p ∘ p ∘ p``. ``law_composites`` builds the same maps in full.
    """
    results, location = [], None
    checks: Tuple[Tuple[str, Callable[[Comonoid, str], Optional[str]]], ...] = (
        ("unit_left", _unit_left_failure),
        ("unit_right", _unit_right_failure),
        ("assoc", _assoc_failure),
    )
    for name, failure_at in checks:
        failure = next(filter(None, (failure_at(c, b) for b in c.carrier.positions)), None)
        results.append(failure is None)
        if failure is not None:
            location = location or f"{name}: {failure}"
    report = LawReport(*results, location)
    if not report.passed:
        logger.info("Comonoid laws fail at %s", location)
    return report


class LawComposites(NamedTuple):
    unit_left: Tuple[PolyMap, PolyMap]
    unit_right: Tuple[PolyMap, PolyMap]
    assoc: Tuple[PolyMap, PolyMap]


def law_composites(c: Comonoid) -> LawComposites:
    """Both sides of each law as full polynomial maps

    ``(ε∘p)∘δ`` against ``p -> y∘p``, ``(p∘ε)∘δ`` against ``p -> p∘y`` and
    ``α∘(δ∘p)∘δ`` against ``(p∘δ)∘δ``.
    """
    p, eps, delta = c.carrier, c.counit, c.comultiplication
    return LawComposites(
        (compose_maps(whisker_right(eps, p), delta), left_unitor(p)),
        (compose_maps(whisker_left(p, eps), delta), right_unitor(p)),
        (
            compose_maps(associator(p, p, p), compose_maps(whisker_right(delta, p), delta)),
            compose_maps(whisker_left(p, delta), delta),
        ),
    )


def check_laws_eager(c: Comonoid) -> LawReport:
    composites = law_composites(c)
    results, location = [], None
    for name, (left, right) in zip(composites._fields, composites):
        failure = first_difference(left, right)
        results.append(failure is None)
        if failure is not None:
            location = location or f"{name}: {failure}"
    return LawReport(*results, location)


def trivial_comonoid() -> Comonoid:
    y = identity_y()
    return Comonoid(y, identity_map(y), left_unitor(y))


def from_tables(
    carrier: Polynomial,
    units: Dict[str, str],
    targets: Dict[str, Dict[str, str]],
    merges: Dict[str, Dict[Tuple[str, str], str]],
) -> Comonoid:
    """A comonoid from ``ε♯_b(*)``, the targets ``q(b, e)`` and ``δ♯_b((e1, e2))`` per position

    ``δ₁(b)`` is taken to be ``(b, e ↦ targets[b][e])``.
    """
    y = identity_y()
    counit = PolyMap.from_tables(
        carrier, y, {b: "*" for b in carrier.positions}, {b: {"*": units[b]} for b in carrier.positions}
    )
    pp = composite_index(carrier, carrier)
    images, sharps = {}, {}
    for b, fiber in carrier.items():
        image = position_label(b, SetMap.from_mapping(fiber, carrier.positions, targets[b]))
        images[b] = image
        missing = [pair for pair in pp.directions[image].values() if pair not in merges[b]]
        if missing:
            raise ValidationError(
                f"No composite for {missing[0]} at {b!r}", code="not-total", location=tuple_label((b, *missing[0]))
            )
        sharps[b] = {dl: merges[b][pair] for dl, pair in pp.directions[image].items()}
    return Comonoid(carrier, counit, PolyMap.from_tables(carrier, pp.polynomial, images, sharps))


def from_category(c: Category) -> Comonoid:
    """Positions are objects, directions at ``o`` the morphisms out of ``o``; ``ε`` picks
    identities, ``δ₁(o) = (o, tgt)`` and ``δ♯_o((f, g)) = g ∘ f``
    """
    check = check_category(c)
    if not check.passed:
        raise LawViolation("Category tables violate the category laws", location=check.location)
    carrier = Polynomial(c.objects, tuple(c.out_of(o) for o in c.objects))
    return from_tables(
        carrier,
        {o: c.ident(o) for o in c.objects},
        {o: {f: c.tgt(f) for f in carrier[o]} for o in c.objects},
        {
            o: {(f, g): c.compose(g, f) for f in carrier[o] for g in carrier[c.tgt(f)]}
            for o in c.objects
        },
    )


def _names_distinct(p: Polynomial) -> bool:
    return len(p.total_space) == len({e for fiber in p.fibers for e in fiber})


def morphism_names(p: Polynomial) -> Dict[Tuple[str, str], str]:
    if _names_distinct(p):
        return {(b, e): e for b, fiber in p.items() for e in fiber}
    return {(b, e): tuple_label((b, e)) for b, fiber in p.items() for e in fiber}


def _require_section(c: Comonoid):
    for b in c.carrier.positions:
        b1, _ = c.spread(b)
        if b1 != b:
            raise SectionError(f"δ₁ sends {b!r} over {b1!r}, not over itself", location=b)


def to_category(c: Comonoid) -> Category:
    """Objects are positions and morphisms are directions; targets, identities and
    composites are read off ``δ₁``, ``ε♯`` and ``δ♯``

    Direction labels name the morphisms when they are distinct across fibers,
    otherwise a direction ``e`` at ``b`` is named ``(b,e)``.
    """
    _require_section(c)
    report = check_laws(c)
    if not report.passed:
        raise LawViolation("Comonoid is not lawful", location=report.location)
    p = c.carrier
    names = morphism_names(p)
    morphisms, composition = [], {}
    for b, fiber in p.items():
        _, f = c.spread(b)
        for e in fiber:
            morphisms.append((names[(b, e)], b, f(e)))
            for d in p[f(e)]:
                composition[(names[(f(e), d)], names[(b, e)])] = names[(b, c.merge(b, e, d))]
    return Category.build(
        p.positions,
        morphisms,
        {b: names[(b, c.unit(b))] for b in p.positions},
        composition,
    )


def canonicalize(c: Comonoid) -> Comonoid:
    """Relabels a direction ``e`` at ``b`` as ``(b,e)`` when direction labels collide across fibers"""
    p = c.carrier
    if _names_distinct(p):
        return c
    _require_section(c)
    rename = morphism_names(p)
    carrier = Polynomial(p.positions, tuple(FinSet(tuple(rename[(b, e)] for e in fiber)) for b, fiber in p.items()))
    targets, merges = {}, {}
    for b, fiber in p.items():
        b1, f = c.spread(b)
        targets[b] = {rename[(b1, e)]: f(e) for e in p[b1]}
        merges[b] = {
            (rename[(b1, i)], rename[(f(i), d)]): rename[(b, c.merge(b, i, d))]
            for i in p[b1]
            for d in p[f(i)]
        }
    return from_tables(carrier, {b: rename[(b, c.unit(b))] for b in p.positions}, targets, merges)


def roundtrip_check(c: Category) -> bool:
    return to_category(from_category(c)) == c


def roundtrip_check_comonoid(c: Comonoid) -> bool:
    return from_category(to_category(c)) == canonicalize(c)


@dataclass(frozen=True)
class Retrofunctor:
    src: Comonoid
    dst: Comonoid
    map: PolyMap

    def __post_init__(self):
        if self.map.src != self.src.carrier or self.map.dst != self.dst.carrier:
            raise ShapeError(
                "Retrofunctor map does not go between the carriers", code="shape-mismatch"
            )


def retrofunctor_check(r: Retrofunctor) -> bool:
    """``ε' ∘ r = ε`` and ``δ' ∘ r = (r ⋄ r) ∘ δ``"""
    counit = compose_maps(r.dst.counit, r.map) == r.src.counit
    comultiplication = compose_maps(r.dst.comultiplication, r.map) == compose_maps(
        horizontal(r.map, r.map), r.src.comultiplication
    )
    if not (counit and comultiplication):
        logger.info("Retrofunctor square fails (counit=%s, comultiplication=%s)", counit, comultiplication)
    return counit and comultiplication


def identity_retrofunctor(c: Comonoid) -> Retrofunctor:
    return Retrofunctor(c, c, identity_map(c.carrier))


def counit_retrofunctor(c: Comonoid) -> Retrofunctor:
    """The map to the trivial comonoid given by ``ε``"""
    return Retrofunctor(c, trivial_comonoid(), c.counit)


def compose_retrofunctors(r2: Retrofunctor, r1: Retrofunctor) -> Retrofunctor:
    if r1.dst != r2.src:
        raise ShapeError("Retrofunctors are not composable", code="shape-mismatch")
    return Retrofunctor(r1.src, r2.dst, compose_maps(r2.map, r1.map))

