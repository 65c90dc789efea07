"""Neighbour functions: graph-parameterised binary relations on nodes.

Only the two simple path expressions are provided, traversing triples with
a fixed predicate forwards (subject to object) or backwards.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rdf import Graph, IRI, Term

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True, order=True)
class Neighbour:
    kind: str
    predicate: IRI

    def __post_init__(self):
        if self.kind not in (FORWARD, BACKWARD):
            raise ValueError(f"unknown neighbour kind: {self.kind!r}")
        if not isinstance(self.predicate, IRI):
            raise TypeError(f"neighbour predicate must be an IRI, got {self.predicate!r}")

    def __call__(self, g: Graph) -> frozenset:
        return eval_neighbour(self, g)

    def __str__(self) -> str:
        return f"{self.kind}({self.predicate.n3()})"


def forward(p: IRI) -> Neighbour:
    return Neighbour(FORWARD, p)


def backward(p: IRI) -> Neighbour:
    return Neighbour(BACKWARD, p)


def eval_neighbour(q: Neighbour, g: Graph) -> frozenset:
    """The set of node pairs (x, y) matching ``q`` in ``g``."""
    pairs = g.pairs(q.predicate)
    if q.kind == FORWARD:
        return frozenset(pairs)
    return frozenset((o, s) for s, o in pairs)


def values(g: Graph, x: Term, q: Neighbour) -> frozenset:
    return successors(g, q).get(x, frozenset())


def successors(g: Graph, q: Neighbour) -> dict:
    """Map each node to its ``q``-values; nodes without values are absent."""
    return g.adjacency(q.predicate, reverse=q.kind == BACKWARD)


__all__ = ["Neighbour", "forward", "backward", "eval_neighbour", "values", "successors"]
