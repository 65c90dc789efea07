"""Shapes: a neighbour graph over constraint names plus one node constraint
per name, optionally pointed at a base name."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .constraints import NodeConstraint
from .neighbour import Neighbour

Name = str


class ShapeError(ValueError):
    code = "shape-error"


class ArcEndpointUnknown(ShapeError):
    code = "arc-endpoint-unknown"


class ConstraintDomainMismatch(ShapeError):
    code = "constraint-domain-mismatch"


class UnknownBaseName(ShapeError):
    code = "unknown-base-name"


@dataclass(frozen=True, order=True)
class Arc:
    source: Name
    path: Neighbour
    target: Name


@dataclass(frozen=True)
class NeighbourGraph:
    names: frozenset
    arcs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "names", frozenset(self.names))
        object.__setattr__(self, "arcs", frozenset(a if isinstance(a, Arc) else Arc(*a) for a in self.arcs))
        for arc in self.arcs:
            for end in (arc.source, arc.target):
                if end not in self.names:
                    raise ArcEndpointUnknown(f"arc {arc.source} -{arc.path}-> {arc.target} uses unknown name {end!r}")

    def arcs_from(self, name: Name) -> list[Arc]:
        return [a for a in self.arcs if a.source == name]


@dataclass(frozen=True)
class NodeConstraints:
    names: frozenset
    constraint: Mapping[Name, NodeConstraint]

    def __post_init__(self):
        object.__setattr__(self, "names", frozenset(self.names))
        object.__setattr__(self, "constraint", dict(self.constraint))
        if set(self.constraint) != set(self.names):
            missing = sorted(set(self.names) - set(self.constraint))
            extra = sorted(set(self.constraint) - set(self.names))
            raise ConstraintDomainMismatch(f"constraint map domain differs from names (missing {missing}, extra {extra})")

    def __hash__(self):
        return hash((self.names, frozenset(self.constraint.items())))


@dataclass(frozen=True)
class Shape:
    neighbour_graph: NeighbourGraph
    node_constraints: NodeConstraints

    def __post_init__(self):
        if self.neighbour_graph.names != self.node_constraints.names:
            raise ConstraintDomainMismatch("neighbour graph and node constraints name different sets")

    @property
    def names(self) -> frozenset:
        return self.neighbour_graph.names

    @property
    def arcs(self) -> frozenset:
        return self.neighbour_graph.arcs

    def constraint(self, name: Name) -> NodeConstraint:
        return self.node_constraints.constraint[name]

    def rename(self, mapping: Mapping[Name, Name]) -> "Shape":
        """Copy of this shape with names substituted (names absent from
        ``mapping`` are kept)."""
        m = lambda n: mapping.get(n, n)  # noqa: E731
        return make_shape(
            {m(n) for n in self.names},
            {Arc(m(a.source), a.path, m(a.target)) for a in self.arcs},
            {m(n): c for n, c in self.node_constraints.constraint.items()},
        )


@dataclass(frozen=True)
class PointedShape:
    shape: Shape
    base_name: Name

    def __post_init__(self):
        if self.base_name not in self.shape.names:
            raise UnknownBaseName(f"base name {self.base_name!r} is not a name of the shape")

    @property
    def neighbour_graph(self) -> NeighbourGraph:
        return self.shape.neighbour_graph

    def rename(self, mapping: Mapping[Name, Name]) -> "PointedShape":
        return PointedShape(self.shape.rename(mapping), mapping.get(self.base_name, self.base_name))


def make_shape(names: Iterable[Name], arcs: Iterable, constraints: Mapping[Name, NodeConstraint]) -> Shape:
    names = frozenset(names)
    return Shape(NeighbourGraph(names, frozenset(arcs)), NodeConstraints(names, constraints))


def point(shape: Shape, base_name: Name) -> PointedShape:
    return PointedShape(shape, base_name)


@dataclass(frozen=True)
class PointedNeighbourGraph:
    neighbour_graph: NeighbourGraph
    base_name: Name

    def __post_init__(self):
        if self.base_name not in self.neighbour_graph.names:
            raise UnknownBaseName(f"base name {self.base_name!r} is not a name of the neighbour graph")
