"""
- Monotone maps ``[m] -> [n]`` of the (augmented) simplex category, faces and degeneracies
- Maps of ``Δ^op`` in their 1-based form ``{1..n} -> {1..m}``
- The shift functor ``e: Δ^op -> Δ``, its inverse on the image, and its augmented extension
- Exhaustive verifiers: functoriality, faithfulness, image, generator and identity transport
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Set, Tuple

import numpy as np

from polycat.finset.finite_sets import ValidationError

logger = logging.getLogger(__name__)

# Largest dimension the exhaustive verifiers accept unless told otherwise
MAX_BOUND = 5


class IndexOutOfRange(ValidationError):
    def __init__(self, message: str, location: Optional[str] = None, code: str = "index-out-of-range"):
        super().__init__(message, code=code, location=location)


class NotInImage(ValidationError):
    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(message, code="not-in-image", location=location)


def _non_decreasing(values: Tuple[int, ...]) -> bool:
    return bool(np.all(np.diff(np.asarray(values, dtype=int)) >= 0)) if len(values) > 1 else True


@dataclass(frozen=True)
class MonotoneMap:
    """``f: [m] -> [n]`` with ``values[k] = f(k)``; ``m = -1`` is the empty object of ``Δ₊``"""

    m: int
    n: int
    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if self.m < -1 or self.n < -1:
            raise IndexOutOfRange(f"Dimensions must be at least -1, got [{self.m}] -> [{self.n}]")
        if len(values) != self.m + 1:
            raise ValidationError(
                f"A map out of [{self.m}] needs {self.m + 1} values, got {len(values)}", code="not-total"
            )
        if any(v < 0 or v > self.n for v in values):
            raise IndexOutOfRange(f"Values {list(values)} leave [{self.n}]", location=str(list(values)))
        if not _non_decreasing(values):
            raise ValidationError(f"Values {list(values)} are not monotone", code="not-monotone")

    def __call__(self, k: int) -> int:
        return self.values[k]

    def to_list(self) -> List[int]:
        return list(self.values)


def identity_monotone(n: int) -> MonotoneMap:
    return MonotoneMap(n, n, tuple(range(n + 1)))


def face(n: int, i: int) -> MonotoneMap:
    """``d_i^n: [n-1] -> [n]``, the injection whose values omit ``i``"""
    if n < 0 or not 0 <= i <= n:
        raise IndexOutOfRange(f"No face d_{i}^{n}", location=f"d_{i}^{n}")
    return MonotoneMap(n - 1, n, tuple(k if k < i else k + 1 for k in range(n)))


def degeneracy(n: int, i: int) -> MonotoneMap:
    """``s_i^n: [n+1] -> [n]``, the surjection whose values duplicate ``i``"""
    if n < 0 or not 0 <= i <= n:
        raise IndexOutOfRange(f"No degeneracy s_{i}^{n}", location=f"s_{i}^{n}")
    return MonotoneMap(n + 1, n, tuple(k if k <= i else k - 1 for k in range(n + 2)))


def compose_monotone(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """``g ∘ f``, by substituting values"""
    if f.n != g.m:
        raise ValidationError(
            f"Cannot compose [{g.m}] -> [{g.n}] after [{f.m}] -> [{f.n}]", code="shape-mismatch"
        )
    values = np.take(np.asarray(g.values, dtype=int), np.asarray(f.values, dtype=int))
    return MonotoneMap(f.m, g.n, tuple(values.tolist()))


def monotone_maps(m: int, n: int) -> Iterator[MonotoneMap]:
    """All monotone ``[m] -> [n]`` in lexicographic order of values"""
    for values in itertools.combinations_with_replacement(range(n + 1), m + 1):
        yield MonotoneMap(m, n, values)


@dataclass(frozen=True)
class DeltaOpMap:
    """A morphism ``[m-1] -> [n-1]`` of ``Δ^op``, stored as the monotone ``f: {1..n} -> {1..m}``

    ``values[k - 1] = f(k)``.
    """

    n: int
    m: int
    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if self.n < 0 or self.m < 0:
            raise IndexOutOfRange(f"Sizes must be natural numbers, got {self.n}, {self.m}")
        if len(values) != self.n:
            raise ValidationError(
                f"A map out of {{1..{self.n}}} needs {self.n} values, got {len(values)}", code="not-total"
            )
        if any(v < 1 or v > self.m for v in values):
            raise IndexOutOfRange(f"Values {list(values)} leave {{1..{self.m}}}", location=str(list(values)))
        if not _non_decreasing(values):
            raise ValidationError(f"Values {list(values)} are not monotone", code="not-monotone")

    @classmethod
    def from_delta(cls, f: MonotoneMap) -> "DeltaOpMap":
        """Reads ``f: [a] -> [b]`` as ``{1..a+1} -> {1..b+1}``"""
        return cls(f.m + 1, f.n + 1, tuple(v + 1 for v in f.values))

    def to_delta(self) -> MonotoneMap:
        return MonotoneMap(self.n - 1, self.m - 1, tuple(v - 1 for v in self.values))


def identity_op(n: int) -> DeltaOpMap:
    return DeltaOpMap(n, n, tuple(range(1, n + 1)))


def compose_op(g: DeltaOpMap, f: DeltaOpMap) -> DeltaOpMap:
    """The underlying composite ``g ∘ f: {1..f.n} -> {1..g.m}``"""
    if f.m != g.n:
        raise ValidationError("Maps are not composable", code="shape-mismatch")
    values = np.take(np.asarray(g.values, dtype=int), np.asarray(f.values, dtype=int) - 1)
    return DeltaOpMap(f.n, g.m, tuple(values.tolist()))


def delta_op_maps(n: int, m: int) -> Iterator[DeltaOpMap]:
    for values in itertools.combinations_with_replacement(range(1, m + 1), n):
        yield DeltaOpMap(n, m, values)


def e_object(n: int) -> int:
    """``e([n-1]) = [n]``"""
    return n


def e_on_map(f: DeltaOpMap) -> MonotoneMap:
    """``e(f): [m] -> [n]``, ``i ↦ max{k : f(k) <= i}`` with ``f(0) = 0``"""
    extended = np.concatenate(([0], np.asarray(f.values, dtype=int)))
    values = np.searchsorted(extended, np.arange(f.m + 1), side="right") - 1
    return MonotoneMap(f.m, f.n, tuple(values.tolist()))


def image_membership(f: MonotoneMap) -> bool:
    """Whether ``f`` lies in the image of ``e``: ``f(0) = 0``, ``f(m) = n`` and ``m, n >= 1``"""
    return f.m >= 1 and f.n >= 1 and f.values[0] == 0 and f.values[-1] == f.n


def e_inverse(f: MonotoneMap) -> DeltaOpMap:
    """The preimage under ``e``: ``f(i-1)+1, ..., f(i)`` all go to ``i``"""
    if not image_membership(f):
        raise NotInImage(
            f"[{f.m}] -> [{f.n}] with values {f.to_list()} is not in the image of e",
            location=str(f.to_list()),
        )
    values = np.searchsorted(np.asarray(f.values, dtype=int), np.arange(1, f.n + 1), side="left")
    return DeltaOpMap(f.n, f.m, tuple(values.tolist()))


def e_plus_object(n: int) -> int:
    """``[-1] ↦ [0]`` and ``[n] ↦ [n+1]``"""
    if n < -1:
        raise IndexOutOfRange(f"No object [{n}] in the augmented simplex category")
    return n + 1


def e_plus(g: MonotoneMap) -> MonotoneMap:
    """``e₊(g: [a] -> [b])`` as the underlying map ``[b+1] -> [a+1]`` of a ``Δ^op`` morphism

    The unique ``[-1] -> [n]`` goes to the constant map ``[n+1] -> [0]``.
    """
    return e_on_map(DeltaOpMap.from_delta(g))


class Generator(NamedTuple):
    """``d_i^n``, ``s_i^n`` or ``id_n``"""

    kind: str
    n: int
    i: int = 0

    def to_map(self) -> MonotoneMap:
        if self.kind == "d":
            return face(self.n, self.i)
        if self.kind == "s":
            return degeneracy(self.n, self.i)
        if self.kind == "id":
            return identity_monotone(self.n)
        raise ValidationError(f"Unknown generator kind {self.kind!r}", code="bad-generator")

    def __str__(self) -> str:
        if self.kind == "id":
            return f"id_{self.n}"
        return f"{self.kind}_{self.i}^{self.n}"


Word = Tuple[Generator, ...]


def word_map(word: Word) -> MonotoneMap:
    """The composite of a word, leftmost generator applied last"""
    if not word:
        raise ValidationError("Empty word", code="bad-generator")
    result = word[-1].to_map()
    for g in reversed(word[:-1]):
        result = compose_monotone(g.to_map(), result)
    return result


def word_label(word: Word) -> str:
    return "∘".join(map(str, word))


def transport_generator(g: Generator) -> Generator:
    """``d_i^n ↦ s_i^n``, ``s_j^k ↦ d_(j+1)^(k+2)``, ``id_n ↦ id_(n+1)``"""
    if g.kind == "d":
        return Generator("s", g.n, g.i)
    if g.kind == "s":
        return Generator("d", g.n + 2, g.i + 1)
    return Generator("id", g.n + 1)


def e_on_word(word: Word) -> Word:
    """``e`` is contravariant on words: the order of generators is reversed"""
    return tuple(transport_generator(g) for g in reversed(word))


def normal_form(f: MonotoneMap) -> Word:
    """``f = d_(i1) ∘ ... ∘ d_(ir) ∘ s_(j1) ∘ ... ∘ s_(jt)`` with ``i1 > ... > ir`` and ``j1 < ... < jt``

    The ``i`` are the values ``f`` misses and the ``j`` the places where ``f(j) = f(j+1)``.
    An identity is returned as ``(id_m,)``.
    """
    missed = sorted(set(range(f.n + 1)) - set(f.values), reverse=True)
    repeats = [j for j in range(f.m) if f.values[j] == f.values[j + 1]]
    degeneracies = []
    dim = f.m
    for j in reversed(repeats):
        dim -= 1
        degeneracies.append(Generator("s", dim, j))
    degeneracies.reverse()
    faces = []
    for i in reversed(missed):
        dim += 1
        faces.append(Generator("d", dim, i))
    faces.reverse()
    word = tuple(faces) + tuple(degeneracies)
    return word or (Generator("id", f.m),)


class FamilyInstance(NamedTuple):
    family: int
    left: Word
    right: Word


def _d(n: int, i: int) -> Generator:
    return Generator("d", n, i)


def _s(n: int, i: int) -> Generator:
    return Generator("s", n, i)


def family_instances(k: int, bound: int, augmented: bool = False) -> Iterator[FamilyInstance]:
    """Instances of the five simplicial identity families with every object of dimension at most ``bound``

    With ``augmented`` the instances through the empty object ``[-1]`` are included.

    1. ``d_j d_i = d_i d_(j-1)``, ``i < j``
    2. ``s_j d_i = d_i s_(j-1)``, ``i < j``
    3. ``s_j d_i = id``, ``i = j`` or ``i = j+1``
    4. ``s_j d_i = d_(i-1) s_j``, ``i > j+1``
    5. ``s_j s_i = s_i s_(j+1)``, ``i <= j``
    """
    if k == 1:
        for n in range(1 if augmented else 2, bound + 1):
            for j in range(n + 1):
                for i in range(j):
                    yield FamilyInstance(1, (_d(n, j), _d(n - 1, i)), (_d(n, i), _d(n - 1, j - 1)))
    elif k == 2:
        for n in range(2, bound + 1):
            for j in range(n):
                for i in range(j):
                    yield FamilyInstance(2, (_s(n - 1, j), _d(n, i)), (_d(n - 1, i), _s(n - 2, j - 1)))
    elif k == 3:
        for n in range(1, bound + 1):
            for j in range(n):
                for i in (j, j + 1):
                    yield FamilyInstance(3, (_s(n - 1, j), _d(n, i)), (Generator("id", n - 1),))
    elif k == 4:
        for n in range(2, bound + 1):
            for j in range(n - 1):
                for i in range(j + 2, n + 1):
                    yield FamilyInstance(4, (_s(n - 1, j), _d(n, i)), (_d(n - 1, i - 1), _s(n - 2, j)))
    elif k == 5:
        for n in range(0, bound - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    yield FamilyInstance(5, (_s(n, j), _s(n + 1, i)), (_s(n, i), _s(n + 1, j + 1)))
    else:
        raise IndexOutOfRange(f"No identity family {k}", location=str(k))


class VerificationReport(NamedTuple):
    name: str
    passed: bool
    checked: int
    failure: Optional[str] = None

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "failure": self.failure}


def _check_bound(bound: int, max_bound: int):
    if bound < 0 or bound > max_bound:
        raise IndexOutOfRange(
            f"Bound {bound} is outside 0..{max_bound}", location="bound", code="bound-too-large"
        )


def _report(name: str, checked: int, failure: Optional[str]) -> VerificationReport:
    if failure:
        logger.info("%s fails at %s", name, failure)
    else:
        logger.debug("%s passed on %d instances", name, checked)
    return VerificationReport(name, failure is None, checked, failure)


def verify_functoriality(bound: int, max_bound: int = MAX_BOUND) -> VerificationReport:
    """``e(g ∘ f) = e(f) ∘ e(g)`` for all composable ``f, g`` with sizes in ``1..bound``"""
    _check_bound(bound, max_bound)
    checked, failure = 0, None
    sizes = range(1, bound + 1)
    for n, m, k in itertools.product(sizes, repeat=3):
        firsts = list(delta_op_maps(n, m))
        seconds = list(delta_op_maps(m, k))
        images = {g: e_on_map(g) for g in seconds}
        for f in firsts:
            ef = e_on_map(f)
            for g in seconds:
                checked += 1
                if e_on_map(compose_op(g, f)) != compose_monotone(ef, images[g]):
                    failure = failure or f"f={list(f.values)}, g={list(g.values)}"
    return _report("functoriality", checked, failure)


def verify_faithfulness(bound: int, max_bound: int = MAX_BOUND) -> VerificationReport:
    """``e`` is injective on every hom-set with sizes in ``1..bound``"""
    _check_bound(bound, max_bound)
    checked, failure = 0, None
    for n, m in itertools.product(range(1, bound + 1), repeat=2):
        seen = {}
        for f in delta_op_maps(n, m):
            checked += 1
            image = e_on_map(f)
            if image in seen:
                failure = failure or f"{list(seen[image].values)} and {list(f.values)}"
            seen[image] = f
    return _report("faithfulness", checked, failure)


def verify_image(bound: int, max_bound: int = MAX_BOUND) -> VerificationReport:
    """``image_membership(f)`` holds exactly for the ``e``-images, and ``e_inverse`` inverts ``e`` there"""
    _check_bound(bound, max_bound)
    checked, failure = 0, None
    for m, n in itertools.product(range(0, bound + 1), repeat=2):
        images: Set[MonotoneMap] = set()
        if m >= 1 and n >= 1:
            for g in delta_op_maps(n, m):
                image = e_on_map(g)
                images.add(image)
                if e_inverse(image) != g:
                    failure = failure or f"e_inverse(e({list(g.values)}))"
        for f in monotone_maps(m, n):
            checked += 1
            if image_membership(f) != (f in images):
                failure = failure or f"[{m}] -> [{n}] values {f.to_list()}"
            elif image_membership(f) and e_on_map(e_inverse(f)) != f:
                failure = failure or f"e(e_inverse({f.to_list()}))"
    return _report("image", checked, failure)


def verify_generators(bound: int, max_bound: int = MAX_BOUND) -> VerificationReport:
    """``e(d_i^n) = s_i^n`` and ``e(s_(i-1)^(n-1)) = d_i^(n+1)``"""
    _check_bound(bound, max_bound)
    checked, failure = 0, None
    for n in range(1, bound + 1):
        for i in range(n + 1):
            checked += 1
            if e_on_map(DeltaOpMap.from_delta(face(n, i))) != degeneracy(n, i):
                failure = failure or f"d_{i}^{n}"
        for i in range(1, n + 1):
            checked += 1
            if e_on_map(DeltaOpMap.from_delta(degeneracy(n - 1, i - 1))) != face(n + 1, i):
                failure = failure or f"s_{i - 1}^{n - 1}"
    return _report("generators", checked, failure)


def verify_identity_transport(bound: int, max_bound: int = MAX_BOUND) -> VerificationReport:
    """Every identity of family ``k`` holds and ``e`` sends it to an identity of family ``6 - k``"""
    _check_bound(bound, max_bound)
    checked, failure = 0, None
    for k in range(1, 6):
        mirror = {(inst.left, inst.right) for inst in family_instances(6 - k, bound + 3)}
        for inst in family_instances(k, bound):
            checked += 1
            where = f"family {k}: {word_label(inst.left)} = {word_label(inst.right)}"
            if word_map(inst.left) != word_map(inst.right):
                failure = failure or where
                continue
            left, right = e_on_word(inst.left), e_on_word(inst.right)
            if e_on_map(DeltaOpMap.from_delta(word_map(inst.left))) != word_map(left):
                failure = failure or where
            elif (left, right) not in mirror and (right, left) not in mirror:
                failure = failure or where
    return _report("identity_transport", checked, failure)


def verify_e_plus(bound: int, max_bound: int = MAX_BOUND) -> VerificationReport:
    """``e₊`` preserves identities, is contravariantly functorial on ``Δ₊`` and agrees with ``e`` off ``[-1]``"""
    _check_bound(bound, max_bound)
    checked, failure = 0, None
    dims = range(-1, bound + 1)
    for a in dims:
        checked += 1
        if e_plus(identity_monotone(a)) != identity_monotone(e_plus_object(a)):
            failure = failure or f"id_{a}"
    for a, b, c in itertools.product(dims, repeat=3):
        for f in monotone_maps(a, b):
            ef = e_plus(f)
            if a == -1 and ef != MonotoneMap(b + 1, 0, (0,) * (b + 2)):
                failure = failure or f"[-1] -> [{b}]"
            for g in monotone_maps(b, c):
                checked += 1
                if e_plus(compose_monotone(g, f)) != compose_monotone(ef, e_plus(g)):
                    failure = failure or f"f={f.to_list()}, g={g.to_list()}"
    return _report("e_plus", checked, failure)


def verify_all(bound: int, max_bound: int = MAX_BOUND) -> List[VerificationReport]:
    return [
        verify(bound, max_bound)
        for verify in (
            verify_functoriality,
            verify_faithfulness,
            verify_image,
            verify_generators,
            verify_identity_transport,
            verify_e_plus,
        )
    ]
