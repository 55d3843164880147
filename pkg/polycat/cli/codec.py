"""
JSON reading and writing for sets, polynomials, maps, diagrams, categories and comonoids.

Schemas (all labels are strings without the characters ``( ) { } , :``):

- set: ``["a", "b"]``
- set map: ``{"src": set, "dst": set, "map": {"a": "x"}}``
- polynomial: ``{"positions": ["b", "c"], "directions": {"b": ["e1", "e2"], "c": []}}``
- polynomial map: ``{"phi1": {"b": "b'"}, "sharp": {"b": {"e'": "e"}}}``, with optional ``"src"`` and ``"dst"``
  polynomials when they are not known from the surrounding document
- composition table: ``{"g∘f": "h"}``; a list of ``["g", "f", "h"]`` triples is read as well
- diagram: ``{"objects": [...], "arrows": [{"name", "src", "tgt"}], "compose": table, "sets": {"A": set}, "maps": {"f": map}}``,
  or ``"polys"`` in place of ``"sets"`` for a diagram of polynomials
- category: ``{"objects": [...], "morphisms": [{"name", "src", "tgt"}], "identities": {"o": "id"}, "compose": table}``
- comonoid: ``{"category": category}`` or ``{"carrier": poly, "units": {"b": "e"}, "targets": {"b": {"e": "b'"}}, "merges": {"b": [["e1", "e2", "e"]]}}``
- parallel pair: ``{"f": map, "g": map}``, with optional shared ``"src"`` and ``"dst"``
"""

import json
import logging
from typing import Any, Dict, Optional, Tuple

from polycat.bilimits.limits import PolyDiagram
from polycat.comonad.category import Category
from polycat.comonad.comonoid import Comonoid, from_category, from_tables
from polycat.finset.finite_sets import (Arrow, FinDiagram, FinSet, SetMap,
                                        Shape, ValidationError,
                                        check_atomic_label)
from polycat.poly.polynomial import PolyMap, Polynomial

logger = logging.getLogger(__name__)

COMPOSE = "∘"


def load_json(path: str) -> Any:
    """Reads a JSON document, turning every read or parse failure into a ``ValidationError``"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ValidationError(f"No such file {path!r}", code="missing-file", location=path) from None
    except json.JSONDecodeError as e:
        raise ValidationError(
            f"Malformed JSON: {e.msg} at line {e.lineno}", code="malformed-json", location=path
        ) from None


def dumps(result: Any) -> str:
    return json.dumps(result, sort_keys=True, indent=2, ensure_ascii=False)


def _expect(data: Any, kind: type, location: str):
    if not isinstance(data, kind):
        raise ValidationError(
            f"Expected a JSON {kind.__name__} at {location}", code="malformed-json", location=location
        )


def _field(data: Dict[str, Any], key: str, location: str) -> Any:
    _expect(data, dict, location)
    if key not in data:
        raise ValidationError(f"Missing field {key!r}", code="malformed-json", location=f"{location}.{key}")
    return data[key]


def _table(data: Dict[str, Any], key: str, location: str) -> dict:
    table = _field(data, key, location)
    _expect(table, dict, f"{location}.{key}")
    return table


def _label(value: Any, location: str) -> str:
    check_atomic_label(value, location)
    return value


def _labels(values: Any, location: str) -> list:
    _expect(values, list, location)
    return [_label(v, f"{location}[{k}]") for k, v in enumerate(values)]


def decode_set(data: Any, location: str = "set") -> FinSet:
    return FinSet(tuple(_labels(data, location)))


def encode_set(s: FinSet) -> list:
    return list(s.elements)


def decode_setmap(data: Any, src: Optional[FinSet] = None, dst: Optional[FinSet] = None, location: str = "map") -> SetMap:
    src = src if src is not None else decode_set(_field(data, "src", location), f"{location}.src")
    dst = dst if dst is not None else decode_set(_field(data, "dst", location), f"{location}.dst")
    return SetMap.from_mapping(src, dst, _table(data, "map", location))


def encode_setmap(f: SetMap) -> dict:
    return {"src": encode_set(f.src), "dst": encode_set(f.dst), "map": f.as_dict()}


def decode_polynomial(data: Any, location: str = "poly") -> Polynomial:
    positions = _labels(_field(data, "positions", location), f"{location}.positions")
    directions = _table(data, "directions", location)
    missing = [b for b in positions if b not in directions]
    if missing:
        raise ValidationError(
            f"No directions given at {missing}", code="not-total", location=f"{location}.directions.{missing[0]}"
        )
    unknown = sorted(set(directions) - set(positions))
    if unknown:
        raise ValidationError(
            f"Directions given at unknown positions {unknown}",
            code="not-in-source",
            location=f"{location}.directions.{unknown[0]}",
        )
    return Polynomial.from_directions({b: _labels(directions[b], f"{location}.directions.{b}") for b in positions})


def encode_polynomial(p: Polynomial) -> dict:
    return {
        "positions": list(p.positions.elements),
        "directions": {b: list(fiber.elements) for b, fiber in p.items()},
    }


def decode_polymap(
    data: Any, src: Optional[Polynomial] = None, dst: Optional[Polynomial] = None, location: str = "polymap"
) -> PolyMap:
    src = src if src is not None else decode_polynomial(_field(data, "src", location), f"{location}.src")
    dst = dst if dst is not None else decode_polynomial(_field(data, "dst", location), f"{location}.dst")
    phi1 = _table(data, "phi1", location)
    sharp = _table(data, "sharp", location)
    for b, table in sharp.items():
        _expect(table, dict, f"{location}.sharp.{b}")
    return PolyMap.from_tables(src, dst, phi1, sharp)


def encode_polymap(phi: PolyMap) -> dict:
    return {
        "src": encode_polynomial(phi.src),
        "dst": encode_polynomial(phi.dst),
        "phi1": phi.on_positions.as_dict(),
        "sharp": {b: phi.sharp(b).as_dict() for b in phi.src.positions},
    }


def _composition(data: Any, location: str) -> Tuple[Tuple[str, str, str], ...]:
    """Reads ``{"g∘f": "h"}`` (or ``[["g", "f", "h"]]``) into ``(g, f, h)`` triples"""
    if isinstance(data, dict):
        entries = []
        for key, h in data.items():
            parts = key.split(COMPOSE)
            if len(parts) != 2:
                raise ValidationError(
                    f"Composition keys are written g{COMPOSE}f, got {key!r}",
                    code="malformed-json",
                    location=f"{location}.{key}",
                )
            entries.append((parts[0], parts[1], h))
    else:
        _expect(data, list, location)
        entries = []
        for k, t in enumerate(data):
            if not isinstance(t, list) or len(t) != 3 or not all(isinstance(x, str) for x in t):
                raise ValidationError(
                    f"Composition entries are [g, f, g{COMPOSE}f] triples",
                    code="malformed-json",
                    location=f"{location}[{k}]",
                )
            entries.append(tuple(t))
    seen = set()
    for g, f, _ in entries:
        if (g, f) in seen:
            raise ValidationError(
                f"{g}{COMPOSE}{f} is listed twice", code="duplicate-label", location=f"{g}{COMPOSE}{f}"
            )
        seen.add((g, f))
    return tuple(entries)


def encode_composition(triples) -> dict:
    return {f"{g}{COMPOSE}{f}": h for g, f, h in triples}


def _arrows(data: Any, location: str) -> list:
    _expect(data, list, location)
    arrows = []
    for k, a in enumerate(data):
        where = f"{location}[{k}]"
        arrows.append(
            (
                _label(_field(a, "name", where), f"{where}.name"),
                _field(a, "src", where),
                _field(a, "tgt", where),
            )
        )
    return arrows


def decode_shape(data: Any, location: str = "diagram") -> Shape:
    objects = _labels(_field(data, "objects", location), f"{location}.objects")
    arrows = _arrows(data.get("arrows", []), f"{location}.arrows")
    composition = _composition(data.get("compose", {}), f"{location}.compose")
    return Shape(tuple(objects), tuple(Arrow(*a) for a in arrows), composition)


def decode_diagram(data: Any, location: str = "diagram"):
    """A ``FinDiagram`` when the nodes come under ``"sets"``, a ``PolyDiagram`` when they come under ``"polys"``"""
    shape = decode_shape(data, location)
    polynomial = "polys" in data
    nodes = _table(data, "polys" if polynomial else "sets", location)
    maps = data.get("maps", {})
    _expect(maps, dict, f"{location}.maps")
    for a in shape.arrows:
        if a.name not in maps:
            raise ValidationError(f"No map for arrow {a.name!r}", code="shape-mismatch", location=a.name)
    if polynomial:
        decoded = {o: decode_polynomial(nodes.get(o), f"{location}.polys.{o}") for o in shape.objects}
        return PolyDiagram.build(
            shape,
            decoded,
            {
                a.name: decode_polymap(maps[a.name], decoded[a.src], decoded[a.tgt], f"{location}.maps.{a.name}")
                for a in shape.arrows
            },
        )
    decoded = {o: decode_set(nodes.get(o), f"{location}.sets.{o}") for o in shape.objects}
    return FinDiagram.build(
        shape,
        decoded,
        {
            a.name: decode_setmap(maps[a.name], decoded[a.src], decoded[a.tgt], f"{location}.maps.{a.name}")
            for a in shape.arrows
        },
    )


def decode_parallel(data: Any, location: str = "pair"):
    """Two parallel maps ``f, g``: set maps, or polynomial maps when they carry ``phi1``"""
    f, g = _field(data, "f", location), _field(data, "g", location)
    _expect(f, dict, f"{location}.f")
    _expect(g, dict, f"{location}.g")
    if "phi1" in f:
        src = decode_polynomial(data["src"], f"{location}.src") if "src" in data else None
        dst = decode_polynomial(data["dst"], f"{location}.dst") if "dst" in data else None
        return decode_polymap(f, src, dst, f"{location}.f"), decode_polymap(g, src, dst, f"{location}.g")
    src = decode_set(data["src"], f"{location}.src") if "src" in data else None
    dst = decode_set(data["dst"], f"{location}.dst") if "dst" in data else None
    return decode_setmap(f, src, dst, f"{location}.f"), decode_setmap(g, src, dst, f"{location}.g")


def decode_category(data: Any, location: str = "category") -> Category:
    objects = _labels(_field(data, "objects", location), f"{location}.objects")
    morphisms = _arrows(_field(data, "morphisms", location), f"{location}.morphisms")
    identities = _table(data, "identities", location)
    composition = _composition(_field(data, "compose", location), f"{location}.compose")
    return Category.build(objects, morphisms, identities, {(g, f): h for g, f, h in composition})


def encode_category(c: Category) -> dict:
    return {
        "objects": list(c.objects.elements),
        "morphisms": [{"name": m, "src": c.src(m), "tgt": c.tgt(m)} for m in c.morphisms],
        "identities": c.ident.as_dict(),
        "compose": encode_composition(c.composition),
    }


def decode_comonoid(data: Any, location: str = "comonoid") -> Comonoid:
    _expect(data, dict, location)
    if "category" in data:
        return from_category(decode_category(data["category"], f"{location}.category"))
    carrier = decode_polynomial(_field(data, "carrier", location), f"{location}.carrier")
    units = _table(data, "units", location)
    targets = _table(data, "targets", location)
    merges = _table(data, "merges", location)
    missing = [b for b in carrier.positions if b not in units or b not in targets or b not in merges]
    if missing:
        raise ValidationError(f"No structure maps at {missing}", code="not-total", location=missing[0])
    for b in carrier.positions:
        _expect(targets[b], dict, f"{location}.targets.{b}")
    return from_tables(
        carrier,
        units,
        targets,
        {
            b: {(e1, e2): e for e1, e2, e in _composition(merges[b], f"{location}.merges.{b}")}
            for b in carrier.positions
        },
    )


def encode_comonoid(c: Comonoid) -> dict:
    p = c.carrier
    targets, merges = {}, {}
    for b, fiber in p.items():
        _, f = c.spread(b)
        targets[b] = {e: f(e) for e in fiber}
        merges[b] = [[e1, e2, c.merge(b, e1, e2)] for e1 in fiber for e2 in p[f(e1)]]
    return {
        "carrier": encode_polynomial(p),
        "units": {b: c.unit(b) for b in p.positions},
        "targets": targets,
        "merges": merges,
    }
