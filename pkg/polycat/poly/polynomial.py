"""
- Polynomials as a position set with a direction set at every position
- Polynomial maps: forward on positions, backward on directions
- Evaluation of a polynomial (and of a map) at a finite set
- Hom-set enumeration and isomorphism search
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from polycat.finset.finite_sets import (EMPTY, POINT, FinSet, SetMap,
                                        ShapeError, ValidationError, compose,
                                        enumerate_maps, identity, is_bijection,
                                        table_label, tuple_label)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Polynomial:
    """``p = Σ_(b in B) y^(p[b])``

    ``fibers[k]`` is the direction set at ``positions.elements[k]``.
    """

    positions: FinSet
    fibers: Tuple[FinSet, ...]

    def __post_init__(self):
        fibers = tuple(self.fibers)
        if len(fibers) != len(self.positions):
            raise ValidationError(
                "Direction sets are not given for every position", code="not-total"
            )
        object.__setattr__(self, "fibers", fibers)

    @classmethod
    def from_directions(cls, directions: Mapping[str, Iterable[str]]) -> "Polynomial":
        positions = FinSet(tuple(directions))
        return cls(positions, tuple(FinSet(tuple(directions[b])) for b in positions))

    def __getitem__(self, b: str) -> FinSet:
        return self.fibers[self.positions.index(b)]

    def items(self) -> Iterator[Tuple[str, FinSet]]:
        return zip(self.positions.elements, self.fibers)

    def directions(self) -> Dict[str, FinSet]:
        return dict(self.items())

    @cached_property
    def total_space(self) -> FinSet:
        """``E = Σ_b p[b]``, elements labeled ``(b,e)``"""
        return FinSet(tuple(tuple_label((b, e)) for b, fiber in self.items() for e in fiber))

    @cached_property
    def bundle(self) -> SetMap:
        """The projection ``E -> B`` of the bundle picture"""
        return SetMap.from_mapping(
            self.total_space,
            self.positions,
            {tuple_label((b, e)): b for b, fiber in self.items() for e in fiber},
        )

    def __str__(self) -> str:
        terms = [f"y^{len(fiber)}" for _, fiber in self.items()]
        return " + ".join(terms) if terms else "0"


def representable(a: FinSet) -> Polynomial:
    """``y^A``: one position with direction set ``A``"""
    return Polynomial(POINT, (a,))


def constant(c: FinSet) -> Polynomial:
    """The constant polynomial on ``C``: no directions anywhere"""
    return Polynomial(c, tuple(EMPTY for _ in c))


def identity_y() -> Polynomial:
    return representable(POINT)


def small_polynomials(max_positions: int, max_fiber: int) -> Iterator[Polynomial]:
    """Every polynomial with at most ``max_positions`` positions and fibers of at most
    ``max_fiber`` directions, one per isomorphism class

    Positions are ``"0", "1", ...`` and the directions at a position are ``"0", "1", ...``
    """
    for n in range(max_positions + 1):
        for sizes in itertools.combinations_with_replacement(range(max_fiber + 1), n):
            yield Polynomial(
                FinSet(tuple(str(k) for k in range(n))),
                tuple(FinSet(tuple(str(e) for e in range(size))) for size in sizes),
            )


def linear(n: int) -> Polynomial:
    """``n·y``"""
    return Polynomial(FinSet(tuple(str(k) for k in range(n))), tuple(POINT for _ in range(n)))


@dataclass(frozen=True)
class PolyMap:
    """``φ: p -> p'`` given by ``φ₁: B -> B'`` and ``φ♯_b: p'[φ₁(b)] -> p[b]``

    ``on_directions[k]`` is ``φ♯`` at ``src.positions.elements[k]``.
    """

    src: Polynomial
    dst: Polynomial
    on_positions: SetMap
    on_directions: Tuple[SetMap, ...]

    def __post_init__(self):
        sharp = tuple(self.on_directions)
        object.__setattr__(self, "on_directions", sharp)
        if self.on_positions.src != self.src.positions or self.on_positions.dst != self.dst.positions:
            raise ShapeError(
                "Position map does not go between the position sets", code="shape-mismatch"
            )
        if len(sharp) != len(self.src.positions):
            raise ShapeError("Direction maps are not given at every position", code="not-total")
        for (b, fiber), phi in zip(self.src.items(), sharp):
            if phi.src != self.dst[self.on_positions(b)] or phi.dst != fiber:
                raise ShapeError(
                    f"Direction map at {b!r} does not go p'[φ₁(b)] -> p[b]",
                    code="shape-mismatch",
                    location=b,
                )

    @classmethod
    def from_tables(
        cls,
        src: Polynomial,
        dst: Polynomial,
        phi1: Mapping[str, str],
        sharp: Mapping[str, Mapping[str, str]],
    ) -> "PolyMap":
        on_positions = SetMap.from_mapping(src.positions, dst.positions, phi1)
        missing = [b for b in src.positions if b not in sharp]
        if missing:
            raise ValidationError(
                f"No direction map at {missing}", code="not-total", location=missing[0]
            )
        return cls(
            src,
            dst,
            on_positions,
            tuple(
                SetMap.from_mapping(dst[on_positions(b)], src[b], sharp[b])
                for b in src.positions
            ),
        )

    def sharp(self, b: str) -> SetMap:
        return self.on_directions[self.src.positions.index(b)]

    @property
    def label(self) -> str:
        return tuple_label(
            (self.on_positions.label, table_label((b, phi.label) for b, phi in zip(self.src.positions, self.on_directions)))
        )

    def is_isomorphism(self) -> bool:
        return is_bijection(self.on_positions) and all(map(is_bijection, self.on_directions))


def identity_map(p: Polynomial) -> PolyMap:
    return PolyMap(p, p, identity(p.positions), tuple(identity(fiber) for fiber in p.fibers))


def compose_maps(psi: PolyMap, phi: PolyMap) -> PolyMap:
    """``ψ ∘ φ``: positions ``ψ₁ ∘ φ₁``, directions ``φ♯_b ∘ ψ♯_(φ₁(b))``"""
    if phi.dst != psi.src:
        raise ShapeError(
            "Cannot compose polynomial maps: target of the first is not the source of the second",
            code="shape-mismatch",
        )
    return PolyMap(
        phi.src,
        psi.dst,
        compose(psi.on_positions, phi.on_positions),
        tuple(
            compose(sharp, psi.sharp(phi.on_positions(b)))
            for b, sharp in zip(phi.src.positions, phi.on_directions)
        ),
    )


def sections(p: Polynomial, x: FinSet) -> Iterator[Tuple[str, SetMap]]:
    """Pairs ``(b, g: p[b] -> X)`` in canonical order"""
    for b, fiber in p.items():
        for g in enumerate_maps(fiber, x):
            yield b, g


def section_label(b: str, g: SetMap) -> str:
    return tuple_label((b, g.label))


@lru_cache(maxsize=256)
def evaluation_index(p: Polynomial, x: FinSet) -> Dict[str, Tuple[str, SetMap]]:
    """Decodes the labels of ``evaluate(p, X)`` back into pairs ``(b, g)``"""
    return {section_label(b, g): (b, g) for b, g in sections(p, x)}


def evaluate(p: Polynomial, x: FinSet) -> FinSet:
    """``p(X) = Σ_b X^(p[b])``, elements labeled ``(b,{e:x,...})``"""
    return FinSet(tuple(evaluation_index(p, x)))


def apply_map(phi: PolyMap, x: FinSet) -> SetMap:
    """The component at ``X`` of the natural transformation: ``(b,g) ↦ (φ₁(b), g ∘ φ♯_b)``"""
    table = {
        label: section_label(phi.on_positions(b), compose(g, phi.sharp(b)))
        for label, (b, g) in evaluation_index(phi.src, x).items()
    }
    return SetMap.from_mapping(evaluate(phi.src, x), evaluate(phi.dst, x), table)


def hom_count(p: Polynomial, q: Polynomial) -> int:
    """``|Hom(p, q)| = Π_b Σ_b' |p[b]|^|q[b']|``"""
    return math.prod(
        sum(len(fiber) ** len(q_fiber) for q_fiber in q.fibers) for fiber in p.fibers
    )


def iter_hom(p: Polynomial, q: Polynomial) -> Iterator[PolyMap]:
    """Lexicographic in ``φ₁``, then in each ``φ♯_b`` by position order"""
    for phi1 in enumerate_maps(p.positions, q.positions):
        choices = [
            list(enumerate_maps(q[phi1(b)], fiber)) for b, fiber in p.items()
        ]
        for sharp in itertools.product(*choices):
            yield PolyMap(p, q, phi1, sharp)


def hom_set(p: Polynomial, q: Polynomial) -> List[PolyMap]:
    logger.debug("Enumerating %d maps %s -> %s", hom_count(p, q), p, q)
    return list(iter_hom(p, q))


def yoneda_element(phi: PolyMap) -> str:
    """The element of ``p(A)`` named by ``φ: y^A -> p``"""
    (point,) = phi.src.positions
    return section_label(phi.on_positions(point), phi.sharp(point))


def _first_bijection(a: FinSet, b: FinSet) -> SetMap:
    return SetMap(a, b, b.elements)


def iso_check(p: Polynomial, q: Polynomial) -> Optional[PolyMap]:
    """An isomorphism ``p -> q`` if one exists

    Two polynomials are isomorphic exactly when their direction counts agree as
    multisets, so positions are matched in order within each direction count and each
    fiber by the order-preserving bijection.
    """
    if len(p.positions) != len(q.positions):
        return None
    if sorted(map(len, p.fibers)) != sorted(map(len, q.fibers)):
        return None
    available: Dict[int, List[str]] = {}
    for c, fiber in q.items():
        available.setdefault(len(fiber), []).append(c)
    perm = [available[len(fiber)].pop(0) for _, fiber in p.items()]
    phi1 = SetMap(p.positions, q.positions, tuple(perm))
    sharp = tuple(_first_bijection(q[c], p[b]) for b, c in zip(p.positions, perm))
    return PolyMap(p, q, phi1, sharp)


def first_difference(phi: PolyMap, psi: PolyMap) -> Optional[str]:
    """Where two parallel maps first disagree: ``position b`` or ``direction d at b``"""
    if phi.src != psi.src or phi.dst != psi.dst:
        raise ShapeError("Maps are not parallel", code="shape-mismatch")
    for b in phi.src.positions:
        if phi.on_positions(b) != psi.on_positions(b):
            return f"position {b}"
    for b in phi.src.positions:
        left, right = phi.sharp(b), psi.sharp(b)
        for d in left.src:
            if left(d) != right(d):
                return f"direction {d} at {b}"
    return None
