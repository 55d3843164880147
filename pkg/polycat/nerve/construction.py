"""
- The augmented simplicial object of iterated self-composites of a comonoid
- The augmented cosimplicial set ``X`` read off its directions along the sections ``f_n``
- Segal decomposition and comparison with the nerve of the associated category
"""

import logging
from dataclasses import dataclass, field
from typing import (Callable, Dict, Hashable, Iterator, List, NamedTuple,
                    Optional, Tuple)

from polycat.comonad.category import Category
from polycat.comonad.comonoid import (Comonoid, LawViolation, SectionError,
                                      check_laws, morphism_names, to_category)
from polycat.finset.finite_sets import (FinSet, SetMap, ValidationError,
                                        compose, identity, is_bijection,
                                        pullback, table_label, tuple_label)
from polycat.monoidal.composition import (DEFAULT_BUDGET, associator,
                                          composite_index, iterate,
                                          left_unitor_inverse,
                                          right_unitor_inverse, whisker_left,
                                          whisker_right)
from polycat.poly.polynomial import PolyMap, compose_maps, identity_map
from polycat.simplex.delta import FamilyInstance, family_instances

logger = logging.getLogger(__name__)

# Structured positions of p^(∘k): "*" at k = 0, b at k = 1, (b, ((e, position), ...)) above.
# Structured directions: "*" at k = 0, e at k = 1, (e, direction) above.
Position = Hashable
Direction = Hashable


def position_label(position: Position) -> str:
    """Canonical label of a structured position, as produced by ``monoidal.compose``"""
    if isinstance(position, str):
        return position
    b, pairs = position
    return tuple_label((b, table_label((e, position_label(inner)) for e, inner in pairs)))


def direction_label(direction: Direction) -> str:
    if isinstance(direction, str):
        return direction
    e, inner = direction
    return tuple_label((e, direction_label(inner)))


class XPoint(NamedTuple):
    b: str
    direction: Direction


@dataclass
class XLevel:
    """``X_m = B ×_(B_(m+1)) E_(m+1)``, elements decoded as ``(b, d)`` with ``d`` a direction at ``f_(m+1)(b)``"""

    m: int
    elements: FinSet
    points: Dict[str, XPoint]
    labels: Dict[XPoint, str] = field(default_factory=dict)

    def __post_init__(self):
        self.labels = {point: label for label, point in self.points.items()}

    def __len__(self) -> int:
        return len(self.elements)


class NerveBuilder:
    def __init__(self, comonoid: Comonoid, debug: bool = False):
        """Pointwise face and degeneracy calculus on the iterated composites of a comonoid

        Only positions of the form ``f_n(b)`` and what they reach are ever visited, so
        levels stay small even when ``p^(∘n)`` is far too large to build.

        Args:
            comonoid (Comonoid): A lawful comonoid whose ``δ₁`` is a section
            debug (bool, optional): Whether to enable debug logging. Defaults to False.
        """
        self.logger = logging.getLogger(__name__)
        log_level = logging.DEBUG if debug else logging.INFO
        self.logger.setLevel(log_level)

        self.comonoid = comonoid
        self.p = comonoid.carrier
        self.targets: Dict[Tuple[str, str], str] = {}
        for b in self.p.positions:
            b1, f = comonoid.spread(b)
            if b1 != b:
                raise SectionError(f"δ₁ sends {b!r} over {b1!r}, not over itself", location=b)
            for e in self.p[b]:
                self.targets[(b, e)] = f(e)
        report = check_laws(comonoid)
        if not report.passed:
            raise LawViolation("Nerve needs a lawful comonoid", location=report.location)
        self._sections: Dict[Tuple[int, str], Position] = {}
        self._levels: Dict[int, XLevel] = {}

    def q(self, b: str, e: str) -> str:
        return self.targets[(b, e)]

    def unit(self, b: str) -> str:
        return self.comonoid.unit(b)

    def merge(self, b: str, e1: str, e2: str) -> str:
        return self.comonoid.merge(b, e1, e2)

    def section(self, n: int, b: str) -> Position:
        """``f_0(b) = *``, ``f_1(b) = b``, ``f_(n+1)(b) = (b, e ↦ f_n(q(e)))``"""
        key = (n, b)
        if key not in self._sections:
            if n == 0:
                value = "*"
            elif n == 1:
                value = b
            else:
                value = (b, tuple((e, self.section(n - 1, self.q(b, e))) for e in self.p[b]))
            self._sections[key] = value
        return self._sections[key]

    def directions(self, k: int, position: Position) -> Iterator[Direction]:
        if k == 0:
            yield "*"
        elif k == 1:
            yield from self.p[position]
        else:
            b, pairs = position
            for e, inner in pairs:
                for d in self.directions(k - 1, inner):
                    yield (e, d)

    def face_position(self, k: int, i: int, position: Position) -> Position:
        """``d_i: p^(∘(k+1)) -> p^(∘k)`` on positions; ``d_i`` applies ``ε`` in slot ``i``"""
        if k == 0:
            return "*"
        b, pairs = position
        g = dict(pairs)
        if i == 0:
            return g[self.unit(b)]
        if k == 1:
            return b
        return (b, tuple((e, self.face_position(k - 1, i - 1, inner)) for e, inner in pairs))

    def face_sharp(self, k: int, i: int, position: Position, d: Direction) -> Direction:
        if k == 0:
            return self.unit(position)
        b, pairs = position
        g = dict(pairs)
        if i == 0:
            return (self.unit(b), d)
        if k == 1:
            return (d, self.unit(g[d]))
        e, inner = d
        return (e, self.face_sharp(k - 1, i - 1, g[e], inner))

    def degeneracy_position(self, k: int, i: int, position: Position) -> Position:
        """``s_i: p^(∘(k+1)) -> p^(∘(k+2))`` on positions; ``s_i`` applies ``δ`` in slot ``i``"""
        if k == 0:
            b = position
            return (b, tuple((e, self.q(b, e)) for e in self.p[b]))
        b, pairs = position
        g = dict(pairs)
        if i == 0:
            return (
                b,
                tuple(
                    (
                        e1,
                        (
                            self.q(b, e1),
                            tuple((e2, g[self.merge(b, e1, e2)]) for e2 in self.p[self.q(b, e1)]),
                        ),
                    )
                    for e1 in self.p[b]
                ),
            )
        return (b, tuple((e, self.degeneracy_position(k - 1, i - 1, inner)) for e, inner in pairs))

    def degeneracy_sharp(self, k: int, i: int, position: Position, d: Direction) -> Direction:
        if k == 0:
            e1, e2 = d
            return self.merge(position, e1, e2)
        b, pairs = position
        if i == 0:
            e1, (e2, inner) = d
            return (self.merge(b, e1, e2), inner)
        e, inner = d
        return (e, self.degeneracy_sharp(k - 1, i - 1, dict(pairs)[e], inner))

    def level(self, m: int) -> XLevel:
        """``X_m`` for ``m >= -1``, as the pullback of ``f_(m+1)`` against the bundle of ``p^(∘(m+1))``
        restricted to the image of ``f_(m+1)``
        """
        if m < -1:
            raise ValidationError(f"No level X_{m}", code="bad-depth", location=str(m))
        if m in self._levels:
            return self._levels[m]
        positions = self.p.positions
        if m == -1:
            points = {b: XPoint(b, "*") for b in positions}
            result = XLevel(-1, positions, points)
        else:
            n = m + 1
            image = {b: self.section(n, b) for b in positions}
            reached = {position_label(v): v for v in image.values()}
            base = FinSet(tuple(reached))
            f_n = SetMap.from_mapping(positions, base, {b: position_label(v) for b, v in image.items()})
            bundle, decoded = {}, {}
            for label, position in reached.items():
                for d in self.directions(n, position):
                    total = tuple_label((label, direction_label(d)))
                    bundle[total] = label
                    decoded[total] = d
            projection = SetMap.from_mapping(FinSet(tuple(bundle)), base, bundle)
            square = pullback(f_n, projection)
            points = {
                x: XPoint(square.left(x), decoded[square.right(x)]) for x in square.apex
            }
            result = XLevel(m, square.apex, points)
        self.logger.debug("X_%d has %d elements", m, len(result))
        self._levels[m] = result
        return result

    def coface(self, m: int, i: int) -> SetMap:
        """``d^i: X_(m-1) -> X_m``, the ♯-pullback of the face ``d_i: p^(∘(m+1)) -> p^(∘m)``"""
        source, target = self.level(m - 1), self.level(m)
        table = {}
        for x, (b, d) in source.points.items():
            image = self.face_sharp(m, i, self.section(m + 1, b), d)
            table[x] = target.labels[XPoint(b, image)]
        return SetMap.from_mapping(source.elements, target.elements, table)

    def codegeneracy(self, m: int, j: int) -> SetMap:
        """``s^j: X_(m+1) -> X_m``, the ♯-pullback of the degeneracy ``s_j: p^(∘(m+1)) -> p^(∘(m+2))``"""
        source, target = self.level(m + 1), self.level(m)
        table = {}
        for x, (b, d) in source.points.items():
            image = self.degeneracy_sharp(m, j, self.section(m + 1, b), d)
            table[x] = target.labels[XPoint(b, image)]
        return SetMap.from_mapping(source.elements, target.elements, table)

    def chain(self, m: int, point: XPoint) -> Tuple[str, ...]:
        """The ``m + 1`` composable morphisms an element of ``X_m`` stands for; its object when ``m = -1``"""
        names = morphism_names(self.p)
        b, d = point
        if m == -1:
            return (b,)
        found = []
        while True:
            if isinstance(d, tuple):
                e, d = d
            else:
                e, d = d, None
            found.append(names[(b, e)])
            b = self.q(b, e)
            if d is None:
                return tuple(found)


def target_map(c: Comonoid) -> SetMap:
    """``q: E -> B``, on the fiber ``p[b]`` the second component of ``δ₁(b)``"""
    p = c.carrier
    table = {}
    for b, fiber in p.items():
        b1, f = c.spread(b)
        if b1 != b:
            raise SectionError(f"δ₁ sends {b!r} over {b1!r}, not over itself", location=b)
        for e in fiber:
            table[tuple_label((b, e))] = f(e)
    return SetMap.from_mapping(p.total_space, p.positions, table)


def f_section(c: Comonoid, n: int, budget: Optional[int] = DEFAULT_BUDGET) -> SetMap:
    """``f_n: B -> B_n`` into the full position set of ``p^(∘n)``, checked to be a section"""
    if n < 1:
        raise ValidationError("Sections start at n = 1", code="bad-depth", location=str(n))
    builder = NerveBuilder(c)
    levels = iterate(c.carrier, n, budget)
    section = SetMap.from_mapping(
        c.carrier.positions,
        levels.positions[n],
        {b: position_label(builder.section(n, b)) for b in c.carrier.positions},
    )
    if not section_check(c, section, n, levels.levels[n - 1]):
        raise SectionError(f"f_{n} is not a section of B_{n} -> B", location=str(n))
    return section


def section_check(c: Comonoid, section: SetMap, n: int, below=None) -> bool:
    """``f_n(b)`` lies over ``b`` under the projection ``B_n -> B``; ``below`` is ``p^(∘(n-1))``"""
    if n == 1:
        return section == identity(c.carrier.positions)
    if below is None:
        below = iterate(c.carrier, n - 1, budget=None).polynomial
    index = composite_index(c.carrier, below)
    return all(index.positions[section(b)][0] == b for b in c.carrier.positions)


def x_level(c: Comonoid, n: int) -> FinSet:
    """``X_(n-1) = B ×_(B_n) E_n``; ``n = 0`` gives ``B``"""
    return NerveBuilder(c).level(n - 1).elements


def x_level_chains(c: Comonoid, n: int) -> Dict[str, Tuple[str, ...]]:
    """Each element of ``X_(n-1)`` as its chain of ``n`` composable morphisms"""
    builder = NerveBuilder(c)
    return {x: builder.chain(n - 1, point) for x, point in builder.level(n - 1).points.items()}


class SegalReport(NamedTuple):
    passed: bool
    witness: SetMap


def segal_check(c: Comonoid, n: int, builder: Optional[NerveBuilder] = None) -> SegalReport:
    """``X_n -> E ×_B X_(n-1)``, ``(b, (e, d)) ↦ ((b,e), (q(e), d))``, must be a bijection"""
    if n < 1:
        raise ValidationError("Segal maps start at n = 1", code="bad-depth", location=str(n))
    builder = builder or NerveBuilder(c)
    top, below = builder.level(n), builder.level(n - 1)
    projection = SetMap.from_mapping(
        below.elements, c.carrier.positions, {x: point.b for x, point in below.points.items()}
    )
    square = pullback(target_map(c), projection)
    table = {}
    for x, (b, d) in top.points.items():
        e, rest = d
        lower = below.labels[XPoint(builder.q(b, e), rest)]
        table[x] = tuple_label((tuple_label((b, e)), lower))
    witness = SetMap.from_mapping(top.elements, square.apex, table)
    passed = is_bijection(witness)
    if not passed:
        logger.info("Segal map at level %d is not a bijection", n)
    return SegalReport(passed, witness)


class IdentityReport(NamedTuple):
    passed: bool
    checked: int
    failure: Optional[str] = None

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "failure": self.failure}


def _evaluate_word(word, maps: Callable, compose_fn: Callable, identity_fn: Callable, contravariant: bool):
    generators = list(reversed(word)) if contravariant else list(word)
    result = None
    for g in reversed(generators):
        current = identity_fn(g.n) if g.kind == "id" else maps(g)
        result = current if result is None else compose_fn(current, result)
    return result


def _check_families(
    depth: int, maps: Callable, compose_fn: Callable, identity_fn: Callable, contravariant: bool
) -> IdentityReport:
    checked, failure = 0, None
    for k in range(1, 6):
        for inst in family_instances(k, depth, augmented=True):
            checked += 1
            left = _evaluate_word(inst.left, maps, compose_fn, identity_fn, contravariant)
            right = _evaluate_word(inst.right, maps, compose_fn, identity_fn, contravariant)
            if left != right:
                failure = failure or _instance_label(inst)
    return IdentityReport(failure is None, checked, failure)


def _instance_label(inst: FamilyInstance) -> str:
    return "∘".join(map(str, inst.left)) + " = " + "∘".join(map(str, inst.right))


@dataclass
class CosimplicialLevels:
    """``X_(-1), ..., X_N`` with cofaces ``d^i: X_(m-1) -> X_m`` and codegeneracies ``s^j: X_(m+1) -> X_m``"""

    depth: int
    levels: List[FinSet]
    cofaces: Dict[Tuple[int, int], SetMap]
    codegeneracies: Dict[Tuple[int, int], SetMap]

    def level(self, m: int) -> FinSet:
        return self.levels[m + 1]


def cosimplicial_assembly(c: Comonoid, depth: int, builder: Optional[NerveBuilder] = None) -> CosimplicialLevels:
    """Applies the ♯-pullback along the sections to every face and degeneracy up to ``depth``

    ``d^i`` on ``X_(m-1)`` comes from the face ``d_i`` of ``p^(∘(m+1))`` and ``s^j`` on
    ``X_(m+1)`` from the degeneracy ``s_j`` of ``p^(∘(m+1))``; ``d^0: B -> E`` is ``ε♯``.
    """
    if depth < 0:
        raise ValidationError("Depth must be non-negative", code="bad-depth", location=str(depth))
    builder = builder or NerveBuilder(c)
    levels = [builder.level(m).elements for m in range(-1, depth + 1)]
    cofaces = {(m, i): builder.coface(m, i) for m in range(0, depth + 1) for i in range(m + 1)}
    codegeneracies = {
        (m, j): builder.codegeneracy(m, j) for m in range(0, depth) for j in range(m + 1)
    }
    logger.debug("Assembled %d cofaces and %d codegeneracies", len(cofaces), len(codegeneracies))
    return CosimplicialLevels(depth, levels, cofaces, codegeneracies)


def check_cosimplicial_identities(levels: CosimplicialLevels) -> IdentityReport:
    """Every simplicial identity instance with objects up to ``[depth]``, read covariantly"""

    def maps(g):
        return levels.cofaces[(g.n, g.i)] if g.kind == "d" else levels.codegeneracies[(g.n, g.i)]

    return _check_families(
        levels.depth, maps, compose, lambda n: identity(levels.level(n)), contravariant=False
    )


@dataclass
class SimplicialPoly:
    """``p^(∘0), ..., p^(∘(N+1))`` with faces ``d_i: p^(∘(k+1)) -> p^(∘k)`` and degeneracies
    ``s_i: p^(∘(k+1)) -> p^(∘(k+2))``
    """

    depth: int
    levels: list
    faces: Dict[Tuple[int, int], PolyMap]
    degeneracies: Dict[Tuple[int, int], PolyMap]


def aug_simplicial_poly(c: Comonoid, depth: int, budget: Optional[int] = DEFAULT_BUDGET) -> SimplicialPoly:
    """Faces apply ``ε`` and degeneracies apply ``δ`` in one composition slot

    ``d_0`` and ``s_0`` act on the outermost factor; ``d_i`` and ``s_i`` for ``i >= 1``
    whisker ``d_(i-1)`` and ``s_(i-1)`` by ``p`` on the left.
    """
    p = c.carrier
    levels = iterate(p, depth + 1, budget).levels
    faces: Dict[Tuple[int, int], PolyMap] = {}
    degeneracies: Dict[Tuple[int, int], PolyMap] = {}
    for k in range(depth + 1):
        for i in range(k + 1):
            if k == 0:
                faces[(k, i)] = c.counit
            elif i == 0:
                faces[(k, i)] = compose_maps(
                    left_unitor_inverse(levels[k]), whisker_right(c.counit, levels[k])
                )
            elif k == 1:
                faces[(k, i)] = compose_maps(right_unitor_inverse(p), whisker_left(p, c.counit))
            else:
                faces[(k, i)] = whisker_left(p, faces[(k - 1, i - 1)])
    for k in range(depth):
        for i in range(k + 1):
            if k == 0:
                degeneracies[(k, i)] = c.comultiplication
            elif i == 0:
                degeneracies[(k, i)] = compose_maps(
                    associator(p, p, levels[k]), whisker_right(c.comultiplication, levels[k])
                )
            else:
                degeneracies[(k, i)] = whisker_left(p, degeneracies[(k - 1, i - 1)])
    logger.debug("Built %d faces and %d degeneracies up to level %d", len(faces), len(degeneracies), depth + 1)
    return SimplicialPoly(depth, levels, faces, degeneracies)


def check_simplicial_identities(simplicial: SimplicialPoly) -> IdentityReport:
    """The same identity instances, read contravariantly on the polynomial levels"""

    def maps(g):
        return simplicial.faces[(g.n, g.i)] if g.kind == "d" else simplicial.degeneracies[(g.n, g.i)]

    return _check_families(
        simplicial.depth,
        maps,
        compose_maps,
        lambda n: identity_map(simplicial.levels[n + 1]),
        contravariant=True,
    )


def sharp_pullback(builder: NerveBuilder, phi: PolyMap, m: int, upward: bool) -> SetMap:
    """The ♯-pullback of a full polynomial map between levels, read through the sections

    For a face ``p^(∘(m+1)) -> p^(∘m)`` pass ``upward=True`` to get ``X_(m-1) -> X_m``;
    for a degeneracy ``p^(∘(m+1)) -> p^(∘(m+2))`` pass ``upward=False`` to get
    ``X_(m+1) -> X_m``.
    """
    source = builder.level(m - 1) if upward else builder.level(m + 1)
    target = builder.level(m)
    decode = {}
    for x, point in target.points.items():
        decode[(point.b, direction_label(point.direction))] = x
    table = {}
    for x, (b, d) in source.points.items():
        sharp = phi.sharp(position_label(builder.section(m + 1, b)))
        table[x] = decode[(b, sharp(direction_label(d)))]
    return SetMap.from_mapping(source.elements, target.elements, table)


class NerveOracle(NamedTuple):
    """Composable ``n``-chains of a category with the standard faces and degeneracies"""

    n: int
    chains: Tuple[Tuple[str, ...], ...]
    faces: Dict[int, Dict[Tuple[str, ...], Tuple[str, ...]]]
    degeneracies: Dict[int, Dict[Tuple[str, ...], Tuple[str, ...]]]


def _nerve_vertex(c: Category, chain: Tuple[str, ...], n: int, i: int) -> str:
    if n == 0:
        return chain[0]
    return c.src(chain[0]) if i == 0 else c.tgt(chain[i - 1])


def nerve_face(c: Category, chain: Tuple[str, ...], n: int, i: int) -> Tuple[str, ...]:
    """``d_i`` drops the vertex ``i``: outer faces drop a morphism, inner faces compose two"""
    if n == 1:
        return (c.tgt(chain[0]),) if i == 0 else (c.src(chain[0]),)
    if i == 0:
        return chain[1:]
    if i == n:
        return chain[:-1]
    return chain[: i - 1] + (c.compose(chain[i], chain[i - 1]),) + chain[i + 1:]


def nerve_degeneracy(c: Category, chain: Tuple[str, ...], n: int, i: int) -> Tuple[str, ...]:
    """``s_i`` inserts the identity of vertex ``i``"""
    identity_arrow = c.ident(_nerve_vertex(c, chain, n, i))
    if n == 0:
        return (identity_arrow,)
    return chain[:i] + (identity_arrow,) + chain[i:]


def nerve_oracle(c: Category, n: int) -> NerveOracle:
    chains = c.chains(n)
    faces = (
        {i: {ch: nerve_face(c, ch, n, i) for ch in chains} for i in range(n + 1)} if n >= 1 else {}
    )
    degeneracies = {i: {ch: nerve_degeneracy(c, ch, n, i) for ch in chains} for i in range(n + 1)}
    return NerveOracle(n, chains, faces, degeneracies)


class OracleReport(NamedTuple):
    passed: bool
    counts: Dict[int, Tuple[int, int]]
    failure: Optional[str] = None


def oracle_check(c: Comonoid, depth: int, builder: Optional[NerveBuilder] = None) -> OracleReport:
    """Compares ``X_(m-1)`` with the ``m``-chains of the associated category for ``m <= depth + 1``

    ``d^i`` must insert an identity like the nerve degeneracy ``s_i`` and ``s^j`` must
    compose like the inner nerve face ``d_(j+1)``.
    """
    builder = builder or NerveBuilder(c)
    category = to_category(c)
    counts, failure = {}, None
    for m in range(0, depth + 2):
        level = builder.level(m - 1)
        chains = {x: builder.chain(m - 1, point) for x, point in level.points.items()}
        oracle = nerve_oracle(category, m)
        counts[m - 1] = (len(level), len(oracle.chains))
        if sorted(chains.values()) != sorted(oracle.chains):
            failure = failure or f"chains of X_{m - 1}"
            continue
        if m <= depth:
            upper = builder.level(m)
            upper_chains = {x: builder.chain(m, point) for x, point in upper.points.items()}
            for i in range(m + 1):
                d = builder.coface(m, i)
                for x, ch in chains.items():
                    if upper_chains[d(x)] != oracle.degeneracies[i][ch]:
                        failure = failure or f"d^{i} on X_{m - 1} at {x}"
        if 0 <= m - 2 < depth:
            below = builder.level(m - 2)
            below_chains = {x: builder.chain(m - 2, point) for x, point in below.points.items()}
            for j in range(m - 1):
                s = builder.codegeneracy(m - 2, j)
                for x, ch in chains.items():
                    if below_chains[s(x)] != oracle.faces[j + 1][ch]:
                        failure = failure or f"s^{j} on X_{m - 1} at {x}"
    if failure:
        logger.info("Nerve oracle disagrees at %s", failure)
    return OracleReport(failure is None, counts, failure)
