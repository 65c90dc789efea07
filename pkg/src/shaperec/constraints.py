"""Node and graph constraints.

A node constraint is a predicate on (graph, node) pairs.  The vocabulary is
small and closed: value presence, cardinality ranges, allowed value sets,
a no-self-reference check and conjunction.  Every node constraint is false
at a term that is not a node of the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .neighbour import BACKWARD, Neighbour, backward, forward, values
from .rdf import FOAF_NS, RDF_TYPE, Graph, IRI, Term, nodes, objects, predicates, subjects


@dataclass(frozen=True)
class Reason:
    """Why a leaf constraint failed at a node."""

    constraint: "NodeConstraint"
    expected: str
    observed: str

    def __str__(self) -> str:
        return f"{self.constraint}: expected {self.expected}, observed {self.observed}"


def _terms(ts) -> str:
    return "{" + ", ".join(t.n3() for t in sorted(ts)) + "}"


class NodeConstraint:
    extension = False

    def holds(self, g: Graph, x: Term) -> bool:
        return not self.explain(g, x)

    def explain(self, g: Graph, x: Term) -> list[Reason]:
        if x not in nodes(g):
            return [Reason(self, "a node of the graph", f"{x.n3()} absent")]
        return self._explain(g, x)

    def _explain(self, g: Graph, x: Term) -> list[Reason]:
        raise NotImplementedError

    def leaves(self) -> list["NodeConstraint"]:
        return [self]


@dataclass(frozen=True)
class HasValue(NodeConstraint):
    path: Neighbour
    value: Term

    def _explain(self, g, x):
        found = values(g, x, self.path)
        if self.value in found:
            return []
        return [Reason(self, f"value {self.value.n3()}", _terms(found))]

    def __str__(self):
        return f"hasValue({self.path}, {self.value.n3()})"


@dataclass(frozen=True)
class CountRange(NodeConstraint):
    """``min <= |values| <= max``; ``max=None`` means unbounded."""

    path: Neighbour
    min: int = 0
    max: Optional[int] = None

    def __post_init__(self):
        if self.min < 0 or (self.max is not None and self.max < self.min):
            raise ValueError(f"invalid count range [{self.min}, {self.max}]")

    def _explain(self, g, x):
        n = len(values(g, x, self.path))
        if n >= self.min and (self.max is None or n <= self.max):
            return []
        return [Reason(self, f"between {self.min} and {self._max_str()} values", str(n))]

    def _max_str(self):
        return "*" if self.max is None else str(self.max)

    def __str__(self):
        return f"countRange({self.path}, {self.min}, {self._max_str()})"


@dataclass(frozen=True)
class AllowedValues(NodeConstraint):
    path: Neighbour
    allowed: frozenset

    def __post_init__(self):
        object.__setattr__(self, "allowed", frozenset(self.allowed))
        if not self.allowed:
            raise ValueError("allowedValues needs at least one value")

    def _explain(self, g, x):
        extra = values(g, x, self.path) - self.allowed
        if not extra:
            return []
        return [Reason(self, f"values within {_terms(self.allowed)}", f"disallowed {_terms(extra)}")]

    def __str__(self):
        return f"allowedValues({self.path}, {_terms(self.allowed)})"


@dataclass(frozen=True)
class NoSelfReference(NodeConstraint):
    """The node is not among its own values.  Not expressible in OSLC
    Resource Shapes, so reports flag it as an extension."""

    path: Neighbour
    extension = True

    def _explain(self, g, x):
        if x in values(g, x, self.path):
            return [Reason(self, f"{x.n3()} not among its own values", "self reference")]
        return []

    def __str__(self):
        return f"noSelfReference({self.path})"


@dataclass(frozen=True)
class AllOf(NodeConstraint):
    parts: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def extension(self):
        return any(p.extension for p in self.parts)

    def _explain(self, g, x):
        reasons = []
        for p in self.parts:
            reasons.extend(p._explain(g, x))
        return reasons

    def leaves(self):
        return [leaf for p in self.parts for leaf in p.leaves()]

    def __str__(self):
        return "allOf[" + ", ".join(str(p) for p in self.parts) + "]"


def eval_node(c: NodeConstraint, g: Graph, x: Term) -> bool:
    return c.holds(g, x)


def explain_node(c: NodeConstraint, g: Graph, x: Term) -> list[Reason]:
    return c.explain(g, x)


_LEAF_ORDER = {HasValue: 0, CountRange: 1, AllowedValues: 2, NoSelfReference: 3}


def canonical_key(c: NodeConstraint) -> tuple:
    """Deterministic ordering for leaves of a conjunction: by constraint
    kind, then forward paths before backward, then predicate."""
    path = c.path
    return (_LEAF_ORDER[type(c)], path.kind == BACKWARD, path.predicate.value, str(c))


# -- graph constraints ------------------------------------------------------


@dataclass(frozen=True)
class MaxTriples:
    n: int

    def holds(self, g: Graph) -> bool:
        return len(g) <= self.n


@dataclass(frozen=True)
class NodeAt:
    node: Term
    constraint: NodeConstraint

    def holds(self, g: Graph) -> bool:
        return self.constraint.holds(g, self.node)


GraphConstraint = Union[MaxTriples, NodeAt]


def eval_graph(c: GraphConstraint, g: Graph) -> bool:
    return c.holds(g)


def has_subject(g: Graph, x: Term) -> bool:
    return x in subjects(g)


def has_predicate(g: Graph, x: Term) -> bool:
    return x in predicates(g)


def has_object(g: Graph, x: Term) -> bool:
    return x in objects(g)


def has_node(g: Graph, x: Term) -> bool:
    return x in nodes(g)


# -- the contact/associate vocabulary ---------------------------------------

FOAF_PERSON = IRI(FOAF_NS + "Person")
FOAF_NAME = IRI(FOAF_NS + "name")
FOAF_KNOWS = IRI(FOAF_NS + "knows")

is_a_person = HasValue(forward(RDF_TYPE), FOAF_PERSON)
has_one_name = CountRange(forward(FOAF_NAME), 1, 1)
is_known_by_one = CountRange(backward(FOAF_KNOWS), 1, 1)
contact_nc = AllOf((is_a_person, has_one_name))
associate_nc = AllOf((is_a_person, has_one_name, is_known_by_one))
small_graphs = MaxTriples(10)
