import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from shaperec.engine import check_all, label_graph, requires_relation
from shaperec.oracle import (
    InstanceTooLarge,
    enumerate_closed_labellings,
    is_closed,
    minimal_closed_labelling,
    naive_consistency_solutions,
)
from shaperec.rdf import Graph, IRI, PointedGraph, nodes
from shaperec.samples import (
    ASSOCIATE,
    CONTACT,
    POLENTONI,
    alessandro,
    alice,
    alice_graph,
    bob,
    charlie,
    diego,
    enrico,
    john,
    maurizio,
    pim_ng,
    pim_ps,
    polentoni_graph,
    polentoni_ps,
    sergio,
)
from shaperec.shapes import NeighbourGraph, PointedNeighbourGraph

from .strategies import random_instance

NAIVE_ROWS = [(True, True, True), (False, True, False), (False, False, True), (False, False, False)]
polentoni_ng = polentoni_ps.neighbour_graph


def test_naive_solutions_alice():
    naive = naive_consistency_solutions(alice_graph, pim_ng, alice, CONTACT)
    assert naive.variables == ((alice, CONTACT), (bob, ASSOCIATE), (charlie, ASSOCIATE))
    assert naive.count == 4
    assert naive.rows() == NAIVE_ROWS


def test_naive_rows_against_stated_condition():
    # (B and C => A) and (A => B) and (A => C), by truth table
    expected = [
        (a, b, c) for a, b, c in product([True, False], repeat=3) if (not (b and c) or a) and (not a or b) and (not a or c)
    ]
    assert naive_consistency_solutions(alice_graph, pim_ng, alice, CONTACT).rows() == expected


def test_naive_single_variable():
    g = Graph([(alice, IRI("http://example.org/t#p"), bob)])
    ng = NeighbourGraph(frozenset({"n"}), frozenset())
    assert naive_consistency_solutions(g, ng, alice, "n").count == 2


def test_naive_polentoni_component():
    naive = naive_consistency_solutions(polentoni_graph, polentoni_ng, diego, POLENTONI)
    assert naive.count >= 2
    seeded = [s.true_set() for s in naive.solutions if s[(diego, POLENTONI)]]
    least = frozenset.intersection(*seeded)
    assert least == {(diego, POLENTONI), (alessandro, POLENTONI), (sergio, POLENTONI)}


def test_closed_labellings_alice():
    seed = (alice, CONTACT)
    sols = enumerate_closed_labellings(alice_graph, pim_ng, seed)
    abc = [(alice, CONTACT), (bob, ASSOCIATE), (charlie, ASSOCIATE)]
    assert {tuple(s[v] for v in abc) for s in sols} == {(True, True, True)}
    assert all(is_closed(s, alice_graph, pim_ng, seed) for s in sols)
    least = minimal_closed_labelling(alice_graph, pim_ng, seed)
    assert least.true_set() == set(abc)


def test_no_arcs_enumerates_everything_with_seed():
    g = Graph([(alice, IRI("http://example.org/t#p"), bob)])
    ng = NeighbourGraph(frozenset({"n", "m"}), frozenset())
    sols = enumerate_closed_labellings(g, ng, (alice, "n"))
    assert len(sols) == 2 ** (len(nodes(g)) * 2 - 1)
    assert all(s[(alice, "n")] for s in sols)
    assert minimal_closed_labelling(g, ng, (alice, "n")).true_set() == {(alice, "n")}


def test_polentoni_closed_labellings():
    sols = enumerate_closed_labellings(polentoni_graph, polentoni_ng, (diego, POLENTONI))
    group = {(diego, POLENTONI), (alessandro, POLENTONI), (sergio, POLENTONI)}
    assert all(group <= s.true_set() for s in sols)
    least = minimal_closed_labelling(polentoni_graph, polentoni_ng, (enrico, POLENTONI))
    assert least.true_set() == {(enrico, POLENTONI), (john, POLENTONI), (maurizio, POLENTONI)}


def test_size_guard():
    g = Graph([(IRI(f"http://example.org/t#n{i}"), IRI("http://example.org/t#p"), IRI(f"http://example.org/t#n{i+1}")) for i in range(12)])
    ng = NeighbourGraph(frozenset({"a", "b"}), frozenset())
    with pytest.raises(InstanceTooLarge):
        enumerate_closed_labellings(g, ng, (IRI("http://example.org/t#n0"), "a"))


def test_pim_check_all_by_brute_force():
    # focus on each person in turn; the least closed labelling decides which
    # constraints apply, and the engine has to agree
    failing = set()
    for x in (alice, bob, charlie):
        least = minimal_closed_labelling(alice_graph, pim_ng, (x, CONTACT))
        for y, names in least.labels().items():
            if any(not pim_ps.shape.constraint(n).holds(alice_graph, y) for n in names):
                failing.add(x)
    assert failing == set()
    assert check_all(pim_ps, alice_graph, {alice, bob, charlie}) == failing


def _closed_by_truth_table(g, ng, seed):
    """Independent of the bitmask code: plain itertools enumeration."""
    variables = [(x, a) for x in sorted(nodes(g)) for a in sorted(ng.names)]
    req = requires_relation(g, ng)
    out = []
    for bits in product([False, True], repeat=len(variables)):
        on = {v for v, b in zip(variables, bits) if b}
        if seed in on and all(v in on for u, v in req if u in on):
            out.append(frozenset(on))
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_enumeration_matches_truth_table(seed_value):
    g, ng, seed = random_instance(random.Random(seed_value))
    if len(nodes(g)) * len(ng.names) > 12:
        g = Graph(list(g.triples)[:2])
        seed = (sorted(nodes(g))[0], seed[1])
    fast = {s.true_set() for s in enumerate_closed_labellings(g, ng, seed)}
    assert fast == set(_closed_by_truth_table(g, ng, seed))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_engine_equals_least_closed_labelling(seed_value):
    g, ng, seed = random_instance(random.Random(seed_value))
    least = minimal_closed_labelling(g, ng, seed)
    assert is_closed(least, g, ng, seed)
    lg = label_graph(PointedGraph(g, seed[0]), PointedNeighbourGraph(ng, seed[1]))
    assert lg.named_nodes() == least.true_set()
