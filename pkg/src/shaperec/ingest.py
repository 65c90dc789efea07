"""Read OSLC Resource Shape documents into shapes.

Each ``oslc:ResourceShape`` becomes a name (its IRI string).  Property nodes
that carry ``oslc:valueShape`` become arcs of the neighbour graph; the
cardinality and allowed-value information on every property node becomes the
shape's node constraint.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Optional

from .constraints import AllOf, AllowedValues, CountRange, HasValue, NodeConstraint, canonical_key
from .neighbour import BACKWARD, FORWARD, Neighbour
from .rdf import RDF_TYPE, XSD_BOOLEAN, BNode, Graph, IRI, Literal, Term, Triple
from .shapes import Arc, Name, PointedShape, Shape, ShapeError, make_shape
from .turtle import abbreviate

log = logging.getLogger(__name__)

OSLC_NS = "http://open-services.net/ns/core#"


def _oslc(local: str) -> IRI:
    return IRI(OSLC_NS + local)


RESOURCE_SHAPE = _oslc("ResourceShape")
PROPERTY = _oslc("property")
PROPERTY_DEFINITION = _oslc("propertyDefinition")
OCCURS = _oslc("occurs")
VALUE_SHAPE = _oslc("valueShape")
IS_INVERSE_PROPERTY = _oslc("isInverseProperty")
ALLOWED_VALUE = _oslc("allowedValue")

# (min, max) with max=None for unbounded
OCCURRENCES = {
    _oslc("Exactly-one"): (1, 1),
    _oslc("Zero-or-one"): (0, 1),
    _oslc("One-or-many"): (1, None),
    _oslc("Zero-or-many"): (0, None),
}

PREFIXES = {"oslc": OSLC_NS, "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#"}


class MalformedProperty(ShapeError):
    code = "malformed-property"


class UnknownBaseShape(ShapeError):
    code = "unknown-base-shape"


class UnknownOccurs(ShapeError):
    code = "unknown-occurs-value"


class DanglingValueShape(ShapeError):
    code = "dangling-valueShape"


@dataclass(frozen=True, order=True)
class ArcRow:
    a: IRI
    direction: str
    p: IRI
    b: IRI

    def __post_init__(self):
        if self.direction not in (FORWARD, BACKWARD):
            raise ValueError(f"bad direction {self.direction!r}")

    def neighbour(self) -> Neighbour:
        return Neighbour(self.direction, self.p)

    def sort_key(self) -> tuple:
        return (self.a.value, self.p.value, self.b.value, self.direction)


@dataclass(frozen=True)
class ShapeDocument:
    graph: Graph
    shape_iris: frozenset
    name_of: Mapping[IRI, Name]

    @classmethod
    def from_graph(cls, graph: Graph) -> "ShapeDocument":
        shapes = frozenset(s for s, o in graph.pairs(RDF_TYPE) if o == RESOURCE_SHAPE and isinstance(s, IRI))
        return cls(graph, shapes, {s: s.value for s in shapes})

    def iri_of(self, name: Name) -> IRI:
        for iri, n in self.name_of.items():
            if n == name:
                return iri
        raise KeyError(name)


def _objects(g: Graph, s: Term, p: IRI) -> list[Term]:
    return sorted(g.adjacency(p).get(s, ()))


def _is_true(t: Term) -> bool:
    return isinstance(t, Literal) and t.lexical.strip().lower() in ("true", "1")


def _property_nodes(g: Graph, shape: IRI) -> list[Term]:
    return _objects(g, shape, PROPERTY)


def _definition(g: Graph, shape: IRI, pn: Term) -> tuple[IRI, bool]:
    defs = _objects(g, pn, PROPERTY_DEFINITION)
    if len(defs) != 1 or not isinstance(defs[0], IRI):
        raise MalformedProperty(
            f"property {pn.n3()} of shape {shape.n3()} needs exactly one IRI oslc:propertyDefinition, found {len(defs)}"
        )
    inverse = any(_is_true(v) for v in _objects(g, pn, IS_INVERSE_PROPERTY))
    return defs[0], inverse


def _value_shapes(g: Graph, pn: Term) -> list[Term]:
    return _objects(g, pn, VALUE_SHAPE)


def extract_arcs(g: Graph) -> list[ArcRow]:
    """One row per (shape, property node, value shape), sorted by (a, p, b)."""
    doc = ShapeDocument.from_graph(g)
    rows = set()
    for shape in doc.shape_iris:
        for pn in _property_nodes(g, shape):
            targets = _value_shapes(g, pn)
            if not targets:
                continue
            p, inverse = _definition(g, shape, pn)
            for b in targets:
                if b not in doc.shape_iris:
                    raise MalformedProperty(f"oslc:valueShape {b.n3()} of {pn.n3()} is not a resource shape")
                rows.add(ArcRow(shape, BACKWARD if inverse else FORWARD, p, b))
    return sorted(rows, key=ArcRow.sort_key)


def _property_constraints(g: Graph, shape: IRI, pn: Term) -> list[NodeConstraint]:
    p, inverse = _definition(g, shape, pn)
    path = Neighbour(BACKWARD if inverse else FORWARD, p)
    out: list[NodeConstraint] = []

    occurs = _objects(g, pn, OCCURS)
    if len(occurs) > 1:
        raise UnknownOccurs(f"property {pn.n3()} has {len(occurs)} oslc:occurs values")
    if occurs:
        if occurs[0] not in OCCURRENCES:
            raise UnknownOccurs(f"unknown oslc:occurs value {occurs[0].n3()} on {pn.n3()}")
        lo, hi = OCCURRENCES[occurs[0]]
        # Zero-or-many holds everywhere; leave it out
        if (lo, hi) != (0, None):
            out.append(CountRange(path, lo, hi))

    allowed = _objects(g, pn, ALLOWED_VALUE)
    if allowed:
        if p == RDF_TYPE and not inverse:
            out.extend(HasValue(path, c) for c in allowed)
        else:
            out.append(AllowedValues(path, frozenset(allowed)))
    return out


def shape_constraint(g: Graph, shape: IRI) -> AllOf:
    leaves = set()
    for pn in _property_nodes(g, shape):
        leaves.update(_property_constraints(g, shape, pn))
    return AllOf(tuple(sorted(leaves, key=canonical_key)))


def parse_shapes(g: Graph, base_shape: IRI, doc: Optional[ShapeDocument] = None) -> PointedShape:
    """Build the pointed shape rooted at ``base_shape``.

    Only shapes reachable from the base through ``oslc:valueShape`` are
    included; others are skipped with a warning.
    """
    doc = doc or ShapeDocument.from_graph(g)
    if base_shape not in doc.shape_iris:
        raise UnknownBaseShape(f"{base_shape.n3()} is not an oslc:ResourceShape in the document")

    reachable = {base_shape}
    todo = [base_shape]
    while todo:
        shape = todo.pop()
        for pn in _property_nodes(g, shape):
            for b in _value_shapes(g, pn):
                if b not in doc.shape_iris:
                    raise DanglingValueShape(f"oslc:valueShape {b.n3()} on {pn.n3()} has no shape definition")
                if b not in reachable:
                    reachable.add(b)
                    todo.append(b)

    skipped = doc.shape_iris - reachable
    if skipped:
        log.warning("ignoring shapes unreachable from %s: %s", base_shape.value, ", ".join(sorted(s.value for s in skipped)))

    arcs = set()
    for shape in reachable:
        for pn in _property_nodes(g, shape):
            targets = _value_shapes(g, pn)
            if targets:
                p, inverse = _definition(g, shape, pn)
                path = Neighbour(BACKWARD if inverse else FORWARD, p)
                arcs.update(Arc(doc.name_of[shape], path, doc.name_of[b]) for b in targets)

    names = {doc.name_of[s] for s in reachable}
    constraints = {doc.name_of[s]: shape_constraint(g, s) for s in reachable}
    return PointedShape(make_shape(names, arcs, constraints), doc.name_of[base_shape])


def format_arc_table(rows: list[ArcRow], prefixes: Optional[Mapping[str, str]] = None) -> str:
    """Render rows as a ``a | direction | p | b`` table."""
    prefixes = prefixes or {}
    cells = [("a", "direction", "p", "b")]
    for r in rows:
        cells.append(
            (
                abbreviate(r.a.value, prefixes),
                f'"{r.direction}"',
                abbreviate(r.p.value, prefixes),
                abbreviate(r.b.value, prefixes),
            )
        )
    widths = [max(len(row[i]) for row in cells) for i in range(4)]
    lines = [" | ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def shape_to_graph(shape: Shape) -> Graph:
    """Write ``shape`` back out as OSLC resource shapes, one property node per
    (shape, path).  Names must be absolute IRIs.

    Raises :class:`ShapeError` for constraints OSLC cannot express.
    """
    occurs_for = {v: k for k, v in OCCURRENCES.items()}
    triples = []
    counter = 0
    for name in sorted(shape.names):
        s = IRI(name)
        triples.append(Triple(s, RDF_TYPE, RESOURCE_SHAPE))
        by_path: dict[Neighbour, list] = {}
        for leaf in shape.constraint(name).leaves():
            by_path.setdefault(leaf.path, []).append(leaf)
        targets: dict[Neighbour, list] = {}
        for arc in shape.arcs:
            if arc.source == name:
                targets.setdefault(arc.path, []).append(arc.target)
        for path in sorted(set(by_path) | set(targets)):
            pn = BNode(f"p{counter}")
            counter += 1
            triples.append(Triple(s, PROPERTY, pn))
            triples.append(Triple(pn, PROPERTY_DEFINITION, path.predicate))
            if path.kind == BACKWARD:
                triples.append(Triple(pn, IS_INVERSE_PROPERTY, Literal("true", XSD_BOOLEAN)))
            for b in sorted(targets.get(path, ())):
                triples.append(Triple(pn, VALUE_SHAPE, IRI(b)))
            ranges = [c for c in by_path.get(path, ()) if isinstance(c, CountRange)]
            if len(ranges) > 1 or (ranges and (ranges[0].min, ranges[0].max) not in occurs_for):
                raise ShapeError(f"cardinality on {path} has no oslc:occurs equivalent")
            if ranges:
                triples.append(Triple(pn, OCCURS, occurs_for[(ranges[0].min, ranges[0].max)]))
            for c in by_path.get(path, ()):
                if isinstance(c, CountRange):
                    continue
                if isinstance(c, HasValue) and path.predicate == RDF_TYPE and path.kind == FORWARD:
                    triples.append(Triple(pn, ALLOWED_VALUE, c.value))
                elif isinstance(c, AllowedValues):
                    triples.extend(Triple(pn, ALLOWED_VALUE, v) for v in c.allowed)
                else:
                    raise ShapeError(f"{c} cannot be written as an OSLC resource shape")
    return Graph(triples)
