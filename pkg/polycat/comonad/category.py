"""
- Small finite categories given by explicit tables
- Exhaustive unit and associativity checks
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Mapping, NamedTuple, Optional, Tuple

from polycat.finset.finite_sets import FinSet, SetMap, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Category:
    """A finite category

    ``composition`` holds every triple ``(g, f, h)`` with ``g ∘ f = h``, one per composable
    pair, identities included.
    """

    objects: FinSet
    morphisms: FinSet
    src: SetMap
    tgt: SetMap
    ident: SetMap
    composition: Tuple[Tuple[str, str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "composition", tuple(sorted(tuple(t) for t in self.composition)))
        for name, m in (("src", self.src), ("tgt", self.tgt)):
            if m.src != self.morphisms or m.dst != self.objects:
                raise ValidationError(
                    f"{name} must map morphisms to objects", code="shape-mismatch", location=name
                )
        if self.ident.src != self.objects or self.ident.dst != self.morphisms:
            raise ValidationError(
                "Identities must map objects to morphisms", code="shape-mismatch", location="identities"
            )
        for o, i in self.ident.items():
            if self.src(i) != o or self.tgt(i) != o:
                raise ValidationError(
                    f"Identity {i!r} of {o!r} is not an endomorphism of {o!r}",
                    code="bad-identity",
                    location=o,
                )
        table = {}
        for g, f, h in self.composition:
            for m in (g, f, h):
                if m not in self.morphisms:
                    raise ValidationError(
                        f"Unknown morphism {m!r} in composition table",
                        code="unknown-morphism",
                        location=f"{g}∘{f}",
                    )
            if self.src(g) != self.tgt(f):
                raise ValidationError(
                    f"{g}∘{f} is listed but not composable", code="not-composable", location=f"{g}∘{f}"
                )
            if (g, f) in table:
                raise ValidationError(
                    f"{g}∘{f} is listed twice", code="duplicate-label", location=f"{g}∘{f}"
                )
            if self.src(h) != self.src(f) or self.tgt(h) != self.tgt(g):
                raise ValidationError(
                    f"Composite {h!r} of {g}∘{f} has the wrong endpoints",
                    code="shape-mismatch",
                    location=f"{g}∘{f}",
                )
            table[(g, f)] = h
        for f in self.morphisms:
            for g in self.morphisms:
                if self.src(g) == self.tgt(f) and (g, f) not in table:
                    raise ValidationError(
                        f"Composition table misses {g}∘{f}",
                        code="incomplete-composition",
                        location=f"{g}∘{f}",
                    )

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        morphisms: Iterable[Tuple[str, str, str]],
        identities: Mapping[str, str],
        composition: Mapping[Tuple[str, str], str],
    ) -> "Category":
        """From ``(name, src, tgt)`` triples, an identity per object and a ``(g, f) -> g∘f`` table"""
        objects = FinSet(tuple(objects))
        morphisms = tuple(morphisms)
        arrows = FinSet(tuple(name for name, _, _ in morphisms))
        return cls(
            objects,
            arrows,
            SetMap.from_mapping(arrows, objects, {name: s for name, s, _ in morphisms}),
            SetMap.from_mapping(arrows, objects, {name: t for name, _, t in morphisms}),
            SetMap.from_mapping(objects, arrows, identities),
            tuple((g, f, h) for (g, f), h in composition.items()),
        )

    @cached_property
    def _table(self) -> Dict[Tuple[str, str], str]:
        return {(g, f): h for g, f, h in self.composition}

    def compose(self, g: str, f: str) -> str:
        """``g ∘ f``"""
        try:
            return self._table[(g, f)]
        except KeyError:
            raise ValidationError(
                f"{g} and {f} are not composable", code="not-composable", location=f"{g}∘{f}"
            ) from None

    def out_of(self, o: str) -> FinSet:
        """Morphisms with source ``o``"""
        return FinSet(tuple(self.src.fiber(o)))

    def chains(self, n: int) -> Tuple[Tuple[str, ...], ...]:
        """Composable chains ``(g_1, ..., g_n)`` with ``tgt(g_k) = src(g_(k+1))``; objects when ``n = 0``"""
        if n == 0:
            return tuple((o,) for o in self.objects)
        found = [(g,) for g in self.morphisms]
        for _ in range(n - 1):
            found = [chain + (g,) for chain in found for g in self.out_of(self.tgt(chain[-1]))]
        return tuple(found)


class CategoryReport(NamedTuple):
    unit_left: bool
    unit_right: bool
    assoc: bool
    location: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.unit_left and self.unit_right and self.assoc


def check_category(c: Category) -> CategoryReport:
    """Checks ``id ∘ f = f = f ∘ id`` and associativity on every composable triple"""
    location = None
    unit_left = unit_right = assoc = True
    for f in c.morphisms:
        if c.compose(c.ident(c.tgt(f)), f) != f:
            unit_left = False
            location = location or f"id∘{f}"
        if c.compose(f, c.ident(c.src(f))) != f:
            unit_right = False
            location = location or f"{f}∘id"
    for f, g, h in c.chains(3):
        if c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f):
            assoc = False
            location = location or f"{h}∘{g}∘{f}"
            break
    report = CategoryReport(unit_left, unit_right, assoc, location)
    if not report.passed:
        logger.info("Category laws fail at %s", location)
    return report
