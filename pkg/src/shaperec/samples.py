"""Ready-made data graphs and shapes: the contact/associate personal
information example and the Polentoni example.

Graphs are also shipped as Turtle under ``shaperec/data``; :func:`data_path`
locates them.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .constraints import (
    FOAF_KNOWS,
    FOAF_NAME,
    FOAF_PERSON,
    AllOf,
    AllowedValues,
    CountRange,
    associate_nc,
    contact_nc,
)
from .neighbour import backward, forward
from .rdf import RDF_TYPE, Graph, IRI, Literal, PointedGraph
from .shapes import Arc, NeighbourGraph, NodeConstraints, PointedNeighbourGraph, make_shape, point


def data_path(name: str) -> Path:
    return Path(str(resources.files("shaperec") / "data" / name))


def load(name: str) -> Graph:
    from .turtle import parse_turtle

    return parse_turtle(data_path(name).read_text(encoding="utf-8"))


# -- personal information management ---------------------------------------

alice = IRI("http://example.org/contacts/alice#me")
bob = IRI("http://example.org/contacts/bob#me")
charlie = IRI("http://example.org/contacts/charlie#me")
Alice = Literal("Alice")
Bob = Literal("Bob")
Charlie = Literal("Charlie")

alice_graph = Graph(
    [
        (alice, RDF_TYPE, FOAF_PERSON),
        (alice, FOAF_NAME, Alice),
        (alice, FOAF_KNOWS, bob),
        (alice, FOAF_KNOWS, charlie),
        (bob, RDF_TYPE, FOAF_PERSON),
        (bob, FOAF_NAME, Bob),
        (charlie, RDF_TYPE, FOAF_PERSON),
        (charlie, FOAF_NAME, Charlie),
    ]
)
alice_pg = PointedGraph(alice_graph, alice)

# Bob's document: Alice has no type and Charlie has no name.
bob_graph = Graph(
    [
        (bob, RDF_TYPE, FOAF_PERSON),
        (bob, FOAF_NAME, Bob),
        (bob, FOAF_KNOWS, alice),
        (bob, FOAF_KNOWS, charlie),
        (alice, FOAF_NAME, Alice),
        (charlie, RDF_TYPE, FOAF_PERSON),
    ]
)
bob_pg = PointedGraph(bob_graph, bob)

CONTACT = "contact"
ASSOCIATE = "associate"

knows = forward(FOAF_KNOWS)
is_known_by = backward(FOAF_KNOWS)
has_type = forward(RDF_TYPE)
has_name = forward(FOAF_NAME)

pim_ng = NeighbourGraph(
    frozenset({CONTACT, ASSOCIATE}),
    frozenset({Arc(CONTACT, knows, ASSOCIATE), Arc(ASSOCIATE, is_known_by, CONTACT)}),
)
pim_png = PointedNeighbourGraph(pim_ng, CONTACT)
pim_ncs = NodeConstraints(frozenset({CONTACT, ASSOCIATE}), {CONTACT: contact_nc, ASSOCIATE: associate_nc})
pim_shape = make_shape(pim_ng.names, pim_ng.arcs, pim_ncs.constraint)
pim_ps = point(pim_shape, CONTACT)

PIM_SHAPES_BASE = "http://example.org/shapes/"
PIM_SHAPE_IRIS = {CONTACT: PIM_SHAPES_BASE + "contact", ASSOCIATE: PIM_SHAPES_BASE + "associate"}

# -- Polentoni ----------------------------------------------------------------

EX = "http://example.org/polentoni#"
ex_knows = IRI(EX + "knows")
ex_lives_in = IRI(EX + "livesIn")
northern_italy = IRI(EX + "NorthernItaly")
southern_italy = IRI(EX + "SouthernItaly")
enrico, john, maurizio = IRI(EX + "Enrico"), IRI(EX + "John"), IRI(EX + "Maurizio")
diego, alessandro, sergio = IRI(EX + "Diego"), IRI(EX + "Alessandro"), IRI(EX + "Sergio")
people = frozenset({enrico, john, maurizio, diego, alessandro, sergio})

polentoni_graph = Graph(
    [
        (enrico, ex_lives_in, northern_italy),
        (enrico, ex_knows, john),
        (john, ex_lives_in, northern_italy),
        (john, ex_knows, maurizio),
        (maurizio, ex_lives_in, southern_italy),
        (diego, ex_lives_in, northern_italy),
        (diego, ex_knows, alessandro),
        (alessandro, ex_lives_in, northern_italy),
        (alessandro, ex_knows, sergio),
        (sergio, ex_lives_in, northern_italy),
        (sergio, ex_knows, diego),
    ]
)

POLENTONI = "polentoni"
POLENTONI_SHAPE_IRI = PIM_SHAPES_BASE + "polentoni"
polentoni_nc = AllOf(
    (
        CountRange(forward(ex_lives_in), 1, 1),
        AllowedValues(forward(ex_lives_in), frozenset({northern_italy})),
    )
)
polentoni_shape = make_shape({POLENTONI}, {Arc(POLENTONI, forward(ex_knows), POLENTONI)}, {POLENTONI: polentoni_nc})
polentoni_ps = point(polentoni_shape, POLENTONI)
