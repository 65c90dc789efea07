import random

import pytest
from hypothesis import given, settings, strategies as st

from shaperec.constraints import AllOf, CountRange, associate_nc, contact_nc
from shaperec.engine import (
    LabelledGraph,
    UnknownLabelName,
    check_all,
    constrain_graph,
    default_candidates,
    label_graph,
    requires_relation,
    satisfies,
    shape_constraint_check,
    validate,
)
from shaperec.neighbour import forward
from shaperec.oracle import closure_by_composition
from shaperec.rdf import FOAF_NS, RDF_TYPE, Graph, IRI, PointedGraph, nodes
from shaperec.samples import (
    ASSOCIATE,
    CONTACT,
    Alice,
    Bob,
    Charlie,
    alessandro,
    alice,
    alice_graph,
    alice_pg,
    bob,
    bob_pg,
    charlie,
    diego,
    enrico,
    john,
    maurizio,
    people,
    pim_ncs,
    pim_ng,
    pim_png,
    pim_ps,
    polentoni_graph,
    polentoni_ps,
    sergio,
)
from shaperec.shapes import Arc, NeighbourGraph, NodeConstraints, PointedNeighbourGraph, PointedShape, Shape

from .strategies import random_instance

FOAF_PERSON = IRI(FOAF_NS + "Person")

alice_lg_label = {
    alice: {CONTACT},
    bob: {ASSOCIATE},
    charlie: {ASSOCIATE},
    Alice: set(),
    Bob: set(),
    Charlie: set(),
    FOAF_PERSON: set(),
}


def test_requires_relation_alice():
    assert requires_relation(alice_graph, pim_ng) == {
        ((alice, CONTACT), (bob, ASSOCIATE)),
        ((alice, CONTACT), (charlie, ASSOCIATE)),
        ((bob, ASSOCIATE), (alice, CONTACT)),
        ((charlie, ASSOCIATE), (alice, CONTACT)),
    }


def test_requires_relation_trivial():
    assert requires_relation(Graph(), pim_ng) == frozenset()
    assert requires_relation(alice_graph, NeighbourGraph(pim_ng.names, frozenset())) == frozenset()


def test_label_alice():
    for pointed in (pim_png, pim_ps):
        lg = label_graph(alice_pg, pointed)
        assert lg.label == alice_lg_label
        assert lg.names == {CONTACT, ASSOCIATE}


def test_label_isolated_base():
    g = Graph([(alice, RDF_TYPE, FOAF_PERSON)])
    lg = label_graph(PointedGraph(g, FOAF_PERSON), pim_png)
    assert lg.labelled() == {FOAF_PERSON: {CONTACT}}


@pytest.mark.parametrize(
    "focus,group",
    [(enrico, {enrico, john, maurizio}), (diego, {diego, alessandro, sergio})],
)
def test_label_polentoni(focus, group):
    lg = label_graph(PointedGraph(polentoni_graph, focus), polentoni_ps)
    assert set(lg.labelled()) == group


def test_constrain_alice():
    cg = constrain_graph(label_graph(alice_pg, pim_png), pim_ncs)
    assert cg.constraints == {
        alice: {contact_nc},
        bob: {associate_nc},
        charlie: {associate_nc},
        Alice: set(),
        Bob: set(),
        Charlie: set(),
        FOAF_PERSON: set(),
    }
    assert validate(cg).valid


def test_constrain_empty_and_shared():
    empty = LabelledGraph(alice_graph, frozenset(), {x: frozenset() for x in nodes(alice_graph)})
    cg = constrain_graph(empty, pim_ncs)
    assert all(not cs for cs in cg.constraints.values())
    assert validate(cg).valid

    ncs = NodeConstraints(frozenset({"x", "y"}), {"x": contact_nc, "y": contact_nc})
    both = LabelledGraph(alice_graph, frozenset({"x", "y"}), {**{n: frozenset() for n in nodes(alice_graph)}, alice: frozenset({"x", "y"})})
    assert constrain_graph(both, ncs).constraints[alice] == {contact_nc}


def test_constrain_unknown_label():
    lg = LabelledGraph(alice_graph, frozenset({"z"}), {alice: frozenset({"z"})})
    with pytest.raises(UnknownLabelName):
        constrain_graph(lg, pim_ncs)


def test_satisfies_alice():
    report = satisfies(pim_ps, alice_pg)
    assert report.valid and report.violations == ()
    assert report.labelling.label == alice_lg_label
    assert report.focus_node == alice and report.shape == CONTACT


def test_bob_invalid():
    report = satisfies(pim_ps, bob_pg)
    assert not report.valid
    by_node = {v.node: v for v in report.violations}
    assert set(by_node) == {alice, charlie}
    assert by_node[alice].name == ASSOCIATE
    assert "hasValue" in str(by_node[alice].reasons[0])
    assert by_node[charlie].reasons[0].constraint == CountRange(forward(IRI(FOAF_NS + "name")), 1, 1)


def test_polentoni_satisfaction():
    bad = satisfies(polentoni_ps, PointedGraph(polentoni_graph, enrico))
    assert not bad.valid
    assert [v.node for v in bad.violations] == [maurizio]
    assert "disallowed" in str(bad.violations[0].reasons[0])
    assert satisfies(polentoni_ps, PointedGraph(polentoni_graph, diego)).valid


def test_shape_constraint_check():
    assert shape_constraint_check(pim_ps, alice_graph, alice)
    assert not shape_constraint_check(pim_ps, alice_graph, IRI("http://example.org/nobody"))
    assert not shape_constraint_check(polentoni_ps, polentoni_graph, maurizio)


def test_check_all():
    assert check_all(polentoni_ps, polentoni_graph, people) == {maurizio, john, enrico}
    assert check_all(polentoni_ps, polentoni_graph, people, workers=4) == {maurizio, john, enrico}
    assert check_all(polentoni_ps, polentoni_graph, set()) == frozenset()


def test_check_all_pim_matches_brute_force():
    # seeding bob or charlie as a contact only labels that node, whose
    # contact constraint holds; see test_oracle for the enumerated check
    assert check_all(pim_ps, alice_graph, {alice, bob, charlie}) == frozenset()


def test_default_candidates_are_people():
    assert default_candidates(polentoni_ps, polentoni_graph) == people


def test_validate_is_stable():
    a = satisfies(pim_ps, bob_pg)
    b = satisfies(pim_ps, bob_pg)
    assert a == b
    keys = [(v.node.sort_key(), v.name) for v in a.violations]
    assert keys == sorted(keys)


def _closed(label, g, ng, seed):
    pairs = {(x, a) for x, ls in label.items() for a in ls}
    if seed not in pairs:
        return False
    return all(v in pairs for u, v in requires_relation(g, ng) if u in pairs)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_closure_properties(seed_value):
    rng = random.Random(seed_value)
    g, ng, seed = random_instance(rng)
    pointed = PointedNeighbourGraph(ng, seed[1])
    lg = label_graph(PointedGraph(g, seed[0]), pointed)
    pairs = lg.named_nodes()
    assert pairs == closure_by_composition(g, ng, seed)
    assert _closed(lg.label, g, ng, seed)
    assert lg.enqueued == len(pairs) <= len(nodes(g)) * len(ng.names)
    assert set(lg.label) == nodes(g)
    shuffled = label_graph(PointedGraph(g, seed[0]), pointed, rng=random.Random(seed_value + 1))
    assert shuffled.label == lg.label


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_adding_arcs_never_removes_labels(seed_value):
    rng = random.Random(seed_value)
    g, ng, seed = random_instance(rng)
    names = sorted(ng.names)
    extra = Arc(rng.choice(names), forward(IRI("http://example.org/t#p0")), rng.choice(names))
    bigger = NeighbourGraph(ng.names, ng.arcs | {extra})
    pg = PointedGraph(g, seed[0])
    small = label_graph(pg, PointedNeighbourGraph(ng, seed[1])).named_nodes()
    large = label_graph(pg, PointedNeighbourGraph(bigger, seed[1])).named_nodes()
    assert small <= large


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_satisfies_agrees_with_shape_constraint(seed_value):
    rng = random.Random(seed_value)
    g, ng, (x, name) = random_instance(rng)
    constraint = AllOf((CountRange(forward(IRI("http://example.org/t#p0")), 0, 1),))
    ps = PointedShape(Shape(ng, NodeConstraints(ng.names, {n: constraint for n in ng.names})), name)
    assert satisfies(ps, PointedGraph(g, x)).valid == shape_constraint_check(ps, g, x)
