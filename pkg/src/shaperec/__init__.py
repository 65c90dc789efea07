"""Validation of RDF graphs against recursive resource shapes."""

__version__ = "0.1.0"

from .constraints import (  # noqa: E402
    AllOf,
    AllowedValues,
    CountRange,
    HasValue,
    MaxTriples,
    NoSelfReference,
    NodeAt,
    eval_graph,
    eval_node,
    explain_node,
    has_node,
    has_object,
    has_predicate,
    has_subject,
)
from .engine import (  # noqa: E402
    check_all,
    constrain_graph,
    label_graph,
    requires_relation,
    satisfies,
    shape_constraint_check,
    validate,
)
from .ingest import extract_arcs, parse_shapes  # noqa: E402
from .neighbour import Neighbour, backward, eval_neighbour, forward, values  # noqa: E402
from .rdf import BNode, Graph, IRI, Literal, PointedGraph, Triple, make_pointed_graph, nodes, objects, predicates, subjects  # noqa: E402
from .shapes import Arc, NeighbourGraph, NodeConstraints, PointedShape, Shape, make_shape, point  # noqa: E402
from .turtle import parse_turtle, serialize_turtle  # noqa: E402
