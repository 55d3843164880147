"""
- Composition product ``p1 ∘ p2`` with canonical composite labels
- Whiskering of polynomial maps and the canonical unit/associativity isomorphisms
- Iterated self-composition with a size budget
- The coclosure ``[p ⟦ p1]`` and the unit of its adjunction
"""

import logging
from functools import lru_cache
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from polycat.finset.finite_sets import (POINT, FinSet, PolycatError, SetMap,
                                        ShapeError, tuple_label)
from polycat.finset.finite_sets import compose as compose_setmaps
from polycat.poly.polynomial import (PolyMap, Polynomial, compose_maps,
                                     evaluate, evaluation_index, identity_y,
                                     section_label)

logger = logging.getLogger(__name__)

# Largest number of positions any iterated composite may reach
DEFAULT_BUDGET = 10**5


class BudgetExceeded(PolycatError):
    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(message, code="budget-exceeded", location=location)


def position_label(b1: str, f: SetMap) -> str:
    """Label of the composite position ``(b1, f: p1[b1] -> B2)``"""
    return section_label(b1, f)


def direction_label(i: str, d: str) -> str:
    """Label of the composite direction ``(i, d)`` with ``i in p1[b1]``, ``d in p2[f(i)]``"""
    return tuple_label((i, d))


class CompositeIndex(NamedTuple):
    polynomial: Polynomial
    positions: Dict[str, Tuple[str, SetMap]]
    directions: Dict[str, Dict[str, Tuple[str, str]]]


def composite_size(p1: Polynomial, p2: Polynomial) -> int:
    """Number of positions of ``p1 ∘ p2``, computed without building it"""
    n = len(p2.positions)
    return sum(n ** len(fiber) for fiber in p1.fibers)


def _check_budget(size: int, budget: Optional[int], what: str):
    if budget is not None and size > budget:
        logger.warning("Refusing to build %s with %d positions (budget %d)", what, size, budget)
        raise BudgetExceeded(
            f"{what} would have {size} positions, over the budget of {budget}", location=what
        )


@lru_cache(maxsize=512)
def _composite_index(p1: Polynomial, p2: Polynomial) -> CompositeIndex:
    positions = evaluation_index(p1, p2.positions)
    directions = {}
    for label, (b1, f) in positions.items():
        directions[label] = {
            direction_label(i, d): (i, d) for i in p1[b1] for d in p2[f(i)]
        }
    polynomial = Polynomial(
        FinSet(tuple(positions)), tuple(FinSet(tuple(directions[b])) for b in sorted(positions))
    )
    return CompositeIndex(polynomial, positions, directions)


def composite_index(p1: Polynomial, p2: Polynomial, budget: Optional[int] = None) -> CompositeIndex:
    """Decoding table of ``p1 ∘ p2``: position labels to ``(b1, f)``, direction labels to ``(i, d)``"""
    _check_budget(composite_size(p1, p2), budget, "composite")
    return _composite_index(p1, p2)


def compose(p1: Polynomial, p2: Polynomial, budget: Optional[int] = None) -> Polynomial:
    """``p1 ∘ p2``: positions ``Σ_(b1) Map(p1[b1], B2)``, directions ``Σ_(i in p1[b1]) p2[f(i)]``"""
    return composite_index(p1, p2, budget).polynomial


def evaluation_iso(p1: Polynomial, p2: Polynomial, x: FinSet) -> SetMap:
    """The canonical bijection ``(p1 ∘ p2)(X) -> p1(p2(X))``"""
    index = composite_index(p1, p2)
    inner = evaluate(p2, x)
    table = {}
    for label, (position, g) in evaluation_index(index.polynomial, x).items():
        b1, f = index.positions[position]
        table[label] = section_label(
            b1,
            SetMap(
                p1[b1],
                inner,
                tuple(
                    section_label(
                        f(i),
                        SetMap(p2[f(i)], x, tuple(g(direction_label(i, d)) for d in p2[f(i)])),
                    )
                    for i in p1[b1]
                ),
            ),
        )
    return SetMap.from_mapping(evaluate(index.polynomial, x), evaluate(p1, inner), table)


def whisker_left(r: Polynomial, phi: PolyMap) -> PolyMap:
    """``r ∘ φ: r ∘ p -> r ∘ p'``"""
    source = composite_index(r, phi.src)
    target = composite_index(r, phi.dst)
    images, sharps = {}, {}
    for label, (b, f) in source.positions.items():
        image = position_label(b, compose_setmaps(phi.on_positions, f))
        images[label] = image
        sharps[label] = {
            dl: direction_label(i, phi.sharp(f(i))(d))
            for dl, (i, d) in target.directions[image].items()
        }
    return PolyMap.from_tables(source.polynomial, target.polynomial, images, sharps)


def whisker_right(phi: PolyMap, r: Polynomial) -> PolyMap:
    """``φ ∘ r: p ∘ r -> p' ∘ r``"""
    source = composite_index(phi.src, r)
    target = composite_index(phi.dst, r)
    images, sharps = {}, {}
    for label, (b, g) in source.positions.items():
        sharp = phi.sharp(b)
        image = position_label(phi.on_positions(b), compose_setmaps(g, sharp))
        images[label] = image
        sharps[label] = {
            dl: direction_label(sharp(i), d)
            for dl, (i, d) in target.directions[image].items()
        }
    return PolyMap.from_tables(source.polynomial, target.polynomial, images, sharps)


def horizontal(phi: PolyMap, psi: PolyMap) -> PolyMap:
    """``φ ⋄ ψ: p ∘ q -> p' ∘ q'``"""
    return compose_maps(whisker_right(phi, psi.dst), whisker_left(phi.src, psi))


def left_unitor(p: Polynomial) -> PolyMap:
    """``p -> y ∘ p``"""
    y = identity_y()
    target = composite_index(y, p)
    images, sharps = {}, {}
    for b, fiber in p.items():
        image = position_label("*", SetMap(POINT, p.positions, (b,)))
        images[b] = image
        sharps[b] = {direction_label("*", e): e for e in fiber}
    return PolyMap.from_tables(p, target.polynomial, images, sharps)


def left_unitor_inverse(p: Polynomial) -> PolyMap:
    """``y ∘ p -> p``"""
    y = identity_y()
    source = composite_index(y, p)
    images, sharps = {}, {}
    for label, (_, f) in source.positions.items():
        b = f("*")
        images[label] = b
        sharps[label] = {e: direction_label("*", e) for e in p[b]}
    return PolyMap.from_tables(source.polynomial, p, images, sharps)


def right_unitor(p: Polynomial) -> PolyMap:
    """``p -> p ∘ y``"""
    y = identity_y()
    target = composite_index(p, y)
    images, sharps = {}, {}
    for b, fiber in p.items():
        images[b] = position_label(b, SetMap(fiber, POINT, tuple("*" for _ in fiber)))
        sharps[b] = {direction_label(e, "*"): e for e in fiber}
    return PolyMap.from_tables(p, target.polynomial, images, sharps)


def right_unitor_inverse(p: Polynomial) -> PolyMap:
    """``p ∘ y -> p``"""
    y = identity_y()
    source = composite_index(p, y)
    images, sharps = {}, {}
    for label, (b, _) in source.positions.items():
        images[label] = b
        sharps[label] = {e: direction_label(e, "*") for e in p[b]}
    return PolyMap.from_tables(source.polynomial, p, images, sharps)


def associator(p: Polynomial, q: Polynomial, r: Polynomial) -> PolyMap:
    """``(p ∘ q) ∘ r -> p ∘ (q ∘ r)``

    ``((b, f), h)`` goes to ``(b, i ↦ (f(i), j ↦ h((i,j))))`` and the direction
    ``(i, (j, k))`` pulls back to ``((i, j), k)``.
    """
    pq = composite_index(p, q)
    qr = composite_index(q, r)
    source = composite_index(pq.polynomial, r)
    target = composite_index(p, qr.polynomial)
    images, sharps = {}, {}
    for label, (outer, h) in source.positions.items():
        b, f = pq.positions[outer]
        inner = SetMap(
            p[b],
            qr.polynomial.positions,
            tuple(
                position_label(
                    f(i), SetMap(q[f(i)], r.positions, tuple(h(direction_label(i, j)) for j in q[f(i)]))
                )
                for i in p[b]
            ),
        )
        image = position_label(b, inner)
        images[label] = image
        table = {}
        for dl, (i, jk) in target.directions[image].items():
            j, k = qr.directions[inner(i)][jk]
            table[dl] = direction_label(direction_label(i, j), k)
        sharps[label] = table
    return PolyMap.from_tables(source.polynomial, target.polynomial, images, sharps)


class IterationLevel(NamedTuple):
    k: int
    polynomial: Polynomial
    positions: FinSet
    total_space: FinSet


class Iteration(NamedTuple):
    polynomial: Polynomial
    positions: List[FinSet]
    total_spaces: List[FinSet]
    levels: List[Polynomial]


def iter_levels(p: Polynomial, n: int, budget: Optional[int] = DEFAULT_BUDGET) -> Iterator[IterationLevel]:
    """Streams ``p^(∘k)`` for ``k = 0..n`` with ``p^(∘0) = y``, ``p^(∘1) = p``, ``p^(∘(k+1)) = p ∘ p^(∘k)``"""
    if n < 0:
        raise ShapeError("Iteration depth must be non-negative", code="bad-depth")
    level = identity_y()
    yield IterationLevel(0, level, level.positions, level.total_space)
    for k in range(1, n + 1):
        if k == 1:
            level = p
        else:
            _check_budget(composite_size(p, level), budget, f"B_{k}")
            level = compose(p, level)
        logger.debug("Level %d has %d positions", k, len(level.positions))
        _check_budget(len(level.positions), budget, f"B_{k}")
        yield IterationLevel(k, level, level.positions, level.total_space)


def iterate(p: Polynomial, n: int, budget: Optional[int] = DEFAULT_BUDGET) -> Iteration:
    """``p^(∘n)`` together with the recorded bundles ``E_k -> B_k`` for ``k <= n``"""
    levels = list(iter_levels(p, n, budget))
    return Iteration(
        levels[-1].polynomial,
        [lvl.positions for lvl in levels],
        [lvl.total_space for lvl in levels],
        [lvl.polynomial for lvl in levels],
    )


def coclosure(p: Polynomial, p1: Polynomial) -> Polynomial:
    """``[p ⟦ p1]``: positions ``B1``, direction set ``p(p1[b1])`` at ``b1``"""
    return Polynomial(p1.positions, tuple(evaluate(p, fiber) for fiber in p1.fibers))


def adjunction_unit(p: Polynomial, p1: Polynomial) -> PolyMap:
    """``η: p1 -> [p ⟦ p1] ∘ p``

    ``b1`` goes to ``(b1, (b, g) ↦ b)`` and the direction ``((b, g), e)`` is sent to
    ``g(e)`` in ``p1[b1]``.
    """
    c = coclosure(p, p1)
    target = composite_index(c, p)
    images, sharps = {}, {}
    for b1 in p1.positions:
        sections = evaluation_index(p, p1[b1])
        h = SetMap(c[b1], p.positions, tuple(sections[s][0] for s in c[b1]))
        image = position_label(b1, h)
        images[b1] = image
        sharps[b1] = {
            dl: sections[s][1](e) for dl, (s, e) in target.directions[image].items()
        }
    return PolyMap.from_tables(p1, target.polynomial, images, sharps)


def adjunction_transpose(p: Polynomial, p1: Polynomial, phi: PolyMap) -> PolyMap:
    """``φ: [p ⟦ p1] -> p2`` goes to ``(φ ∘ p) ∘ η: p1 -> p2 ∘ p``"""
    return compose_maps(whisker_right(phi, p), adjunction_unit(p, p1))
