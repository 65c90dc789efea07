"""RDF terms, triples and immutable in-memory graphs."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
FOAF_NS = "http://xmlns.com/foaf/0.1/"


class GraphError(ValueError):
    pass


class NodeNotInGraph(GraphError):
    code = "node-not-in-graph"


class Term:
    """Base for the three disjoint kinds of RDF term."""

    __slots__ = ()
    kind: str = ""

    def n3(self) -> str:
        raise NotImplementedError

    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], self.n3())

    def __lt__(self, other: "Term") -> bool:
        if not isinstance(other, Term):
            return NotImplemented
        return self.sort_key() < other.sort_key()


@dataclass(frozen=True, slots=True, order=False)
class IRI(Term):
    value: str

    kind = "iri"

    def __post_init__(self):
        if not isinstance(self.value, str) or not self.value:
            raise GraphError(f"invalid IRI: {self.value!r}")
        if any(c in self.value for c in '<>"{}|^`\\ \n\t'):
            raise GraphError(f"IRI contains forbidden character: {self.value!r}")

    def n3(self) -> str:
        return f"<{self.value}>"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True, order=False)
class BNode(Term):
    label: str

    kind = "bnode"

    def __post_init__(self):
        if not self.label or not all(c.isalnum() or c in "_-" for c in self.label):
            raise GraphError(f"invalid blank node label: {self.label!r}")

    def n3(self) -> str:
        return f"_:{self.label}"

    def __str__(self) -> str:
        return self.n3()


@dataclass(frozen=True, slots=True, order=False)
class Literal(Term):
    lexical: str
    datatype: Optional[IRI] = None
    language: Optional[str] = None

    kind = "literal"

    def __post_init__(self):
        if not isinstance(self.lexical, str):
            raise GraphError(f"literal lexical form must be a string: {self.lexical!r}")
        if self.datatype is not None and self.language is not None:
            raise GraphError("a literal cannot carry both a datatype and a language tag")
        if self.datatype is not None and not isinstance(self.datatype, IRI):
            raise GraphError(f"literal datatype must be an IRI: {self.datatype!r}")
        if self.language is not None:
            parts = self.language.split("-")
            if not all(p and p.isalnum() and p.isascii() for p in parts) or not parts[0].isalpha():
                raise GraphError(f"invalid language tag: {self.language!r}")

    def n3(self) -> str:
        s = '"' + escape_string(self.lexical) + '"'
        if self.language is not None:
            return f"{s}@{self.language}"
        if self.datatype is not None:
            return f"{s}^^{self.datatype.n3()}"
        return s

    def __str__(self) -> str:
        return self.n3()


_KIND_ORDER = {"iri": 0, "bnode": 1, "literal": 2}

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t", "\b": "\\b", "\f": "\\f"}


def escape_string(s: str) -> str:
    out = []
    for c in s:
        if c in _ESCAPES:
            out.append(_ESCAPES[c])
        elif ord(c) < 0x20 or ord(c) == 0x7F:
            out.append(f"\\u{ord(c):04X}")
        else:
            out.append(c)
    return "".join(out)


RDF_TYPE = IRI(RDF_NS + "type")
XSD_BOOLEAN = IRI(XSD_NS + "boolean")


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Term
    predicate: IRI
    object: Term

    def __post_init__(self):
        if not isinstance(self.subject, (IRI, BNode)):
            raise GraphError(f"triple subject must be an IRI or blank node: {self.subject!r}")
        if not isinstance(self.predicate, IRI):
            raise GraphError(f"triple predicate must be an IRI: {self.predicate!r}")
        if not isinstance(self.object, Term):
            raise GraphError(f"triple object must be a term: {self.object!r}")

    def __iter__(self) -> Iterator[Term]:
        return iter((self.subject, self.predicate, self.object))

    def sort_key(self) -> tuple:
        return (self.subject.sort_key(), self.predicate.sort_key(), self.object.sort_key())


class Graph:
    """A finite set of triples.

    Graphs are values: equality ignores insertion order and duplicates, and
    the per-predicate index is built lazily and never observable.
    """

    def __init__(self, triples: Iterable = ()):
        self.triples: frozenset = frozenset(
            t if isinstance(t, Triple) else Triple(*t) for t in triples
        )

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.triples)

    def __contains__(self, t) -> bool:
        if not isinstance(t, Triple):
            try:
                t = Triple(*t)
            except (GraphError, TypeError):
                return False
        return t in self.triples

    def __hash__(self) -> int:
        return hash(self.triples)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.triples == other.triples

    def __repr__(self) -> str:
        return f"Graph(<{len(self.triples)} triples>)"

    def add(self, *triples) -> "Graph":
        return Graph(self.triples | Graph(triples).triples)

    def union(self, other: "Graph") -> "Graph":
        return Graph(self.triples | other.triples)

    def sorted(self) -> list[Triple]:
        return sorted(self.triples, key=Triple.sort_key)

    @cached_property
    def _by_predicate(self) -> dict:
        index = defaultdict(list)
        for t in self.triples:
            index[t.predicate].append((t.subject, t.object))
        return dict(index)

    def pairs(self, predicate: IRI) -> list[tuple[Term, Term]]:
        """(subject, object) pairs of every triple with the given predicate."""
        return self._by_predicate.get(predicate, [])

    def adjacency(self, predicate: IRI, reverse: bool = False) -> dict:
        """Node -> frozenset of neighbours along ``predicate`` (objects, or
        subjects when ``reverse``)."""
        cache = self.__dict__.setdefault("_adjacency_cache", {})
        key = (predicate, reverse)
        if key not in cache:
            adj = defaultdict(set)
            for s, o in self.pairs(predicate):
                if reverse:
                    adj[o].add(s)
                else:
                    adj[s].add(o)
            cache[key] = {k: frozenset(v) for k, v in adj.items()}
        return cache[key]

    @cached_property
    def _subjects(self) -> frozenset:
        return frozenset(t.subject for t in self.triples)

    @cached_property
    def _objects(self) -> frozenset:
        return frozenset(t.object for t in self.triples)

    @cached_property
    def _predicates(self) -> frozenset:
        return frozenset(t.predicate for t in self.triples)

    @cached_property
    def _nodes(self) -> frozenset:
        return self._subjects | self._objects


def subjects(g: Graph) -> frozenset:
    return g._subjects


def predicates(g: Graph) -> frozenset:
    return g._predicates


def objects(g: Graph) -> frozenset:
    return g._objects


def nodes(g: Graph) -> frozenset:
    return g._nodes


@dataclass(frozen=True)
class PointedGraph:
    graph: Graph
    base_node: Term

    def __post_init__(self):
        if self.base_node not in nodes(self.graph):
            raise NodeNotInGraph(f"{self.base_node.n3()} is not a node of the graph")


def make_pointed_graph(g: Graph, x: Term) -> PointedGraph:
    return PointedGraph(g, x)
