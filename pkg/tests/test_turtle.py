import pytest
from hypothesis import given, settings

from shaperec.constraints import FOAF_PERSON
from shaperec.rdf import RDF_TYPE, XSD_BOOLEAN, BNode, Graph, IRI, Literal
from shaperec.samples import alice, alice_graph, bob_graph, load, polentoni_graph
from shaperec.turtle import RelativeIRI, TurtleSyntaxError, UndeclaredPrefix, parse_turtle, serialize_turtle

from .strategies import graphs

FIXTURES = ["alice-contact.ttl", "bob-contact.ttl", "pim-shapes.ttl", "polentoni-data.ttl", "polentoni-shape.ttl"]


def test_single_statement():
    g = parse_turtle(
        "@prefix foaf: <http://xmlns.com/foaf/0.1/> . <http://example.org/contacts/alice#me> a foaf:Person ."
    )
    assert g == Graph([(alice, RDF_TYPE, FOAF_PERSON)])


def test_empty_document():
    assert parse_turtle("") == Graph()
    assert parse_turtle("# only a comment\n\n") == Graph()


def test_sample_documents_match_hand_built_graphs():
    assert load("alice-contact.ttl") == alice_graph
    assert load("bob-contact.ttl") == bob_graph
    assert load("polentoni-data.ttl") == polentoni_graph


def test_lists_and_duplicates():
    g = parse_turtle(
        """
        @prefix ex: <http://example.org/> .
        ex:a ex:p ex:b, ex:c ; ex:q "x" ;; .
        ex:a ex:p ex:b .
        """
    )
    assert len(g) == 3


def test_literal_forms():
    g = parse_turtle(
        """
        PREFIX ex: <http://example.org/>
        PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>
        ex:s ex:p "chat"@fr, "42"^^xsd:integer, 'single', '''long
"quoted" text''', "tab\\there\\u00e9", true, false .
        """
    )
    objs = {t.object for t in g}
    x = "http://www.w3.org/2001/XMLSchema#"
    assert Literal("chat", language="fr") in objs
    assert Literal("42", IRI(x + "integer")) in objs
    assert Literal("single") in objs
    assert Literal('long\n"quoted" text') in objs
    assert Literal("tab\there\u00e9") in objs
    assert Literal("true", XSD_BOOLEAN) in objs and Literal("false", XSD_BOOLEAN) in objs


def test_base_and_blank_nodes():
    g = parse_turtle("@base <http://example.org/dir/> . <a> <p> _:x . _:x <#q> <../b> .")
    assert g == Graph(
        [
            (IRI("http://example.org/dir/a"), IRI("http://example.org/dir/p"), BNode("x")),
            (BNode("x"), IRI("http://example.org/dir/#q"), IRI("http://example.org/b")),
        ]
    )


def test_prefixed_name_with_trailing_dot():
    g = parse_turtle("@prefix ex: <http://e/> . ex:a ex:b ex:c.d.")
    assert {t.object for t in g} == {IRI("http://e/c.d")}


@pytest.mark.parametrize(
    "text,cls,line,col",
    [
        ("<http://e/a> <http://e/b> .", TurtleSyntaxError, 1, 27),
        ("@prefix ex: <http://e/> .\nex:a ex:b\n  nope:c .", UndeclaredPrefix, 3, 3),
        ("<a> <http://e/b> <http://e/c> .", RelativeIRI, 1, 1),
        ('<http://e/a> <http://e/b> "open .', TurtleSyntaxError, 1, 27),
        ("<http://e/a> <http://e/b> ( <http://e/c> ) .", TurtleSyntaxError, 1, 27),
        ("<http://e/a> <http://e/b> [ <http://e/c> <http://e/d> ] .", TurtleSyntaxError, 1, 27),
        ('"lit" <http://e/b> <http://e/c> .', TurtleSyntaxError, 1, 1),
        ("<http://e/a> <http://e/b> <http://e/c>", TurtleSyntaxError, 1, 39),
        ("<http://e/a> <http://e/b> 12 .", TurtleSyntaxError, 1, 27),
        ("@foo <http://e/> .", TurtleSyntaxError, 1, 1),
    ],
)
def test_errors_carry_position(text, cls, line, col):
    with pytest.raises(cls) as info:
        parse_turtle(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert str(info.value).startswith(f"{line}:{col}: ")


def test_serialize_empty_and_single():
    assert parse_turtle(serialize_turtle(Graph())) == Graph()
    one = Graph([(alice, RDF_TYPE, FOAF_PERSON)])
    text = serialize_turtle(one)
    assert text.count(" .") == 1
    assert parse_turtle(text) == one


def test_serialize_is_deterministic_and_uses_prefixes():
    prefixes = {"foaf": "http://xmlns.com/foaf/0.1/"}
    text = serialize_turtle(alice_graph, prefixes)
    assert text == serialize_turtle(Graph(reversed(alice_graph.sorted())), prefixes)
    assert "foaf:knows" in text and "@prefix foaf:" in text
    assert parse_turtle(text) == alice_graph
    # three subjects, one statement block each
    blocks = [line for line in text.splitlines() if line.endswith(" .") and not line.startswith("@")]
    assert len(blocks) == 3


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_round_trip(name):
    g = load(name)
    assert parse_turtle(serialize_turtle(g)) == g


@settings(max_examples=200)
@given(graphs)
def test_round_trip_random(g):
    assert parse_turtle(serialize_turtle(g)) == g
    assert parse_turtle(serialize_turtle(g, {"t": "http://example.org/t#"})) == g
