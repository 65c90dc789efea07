"""Parser and serializer for the subset of Turtle used by data and shape files.

Supported: ``@prefix``/``@base`` (and the SPARQL-style ``PREFIX``/``BASE``),
IRI references, prefixed names, ``a``, predicate lists (``;``), object lists
(``,``), short and long string literals with language tags or datatypes,
the ``true``/``false`` keywords and ``_:`` blank nodes.  Collections,
``[]`` blank node property lists and numeric shorthand are rejected.
"""

from __future__ import annotations

import re
from typing import Mapping, Optional
from urllib.parse import urljoin

from .rdf import RDF_TYPE, XSD_BOOLEAN, BNode, Graph, GraphError, IRI, Literal, Term, Triple, escape_string

_SCHEME = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")
_SAFE_LOCAL = re.compile(r"[A-Za-z0-9_]([A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?\Z")
_LOCAL_ESCAPABLE = set("_~.-!$&'()*+,;=/?#@%")
_STRING_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


class TurtleSyntaxError(ValueError):
    """Parse failure carrying a 1-based source position."""

    code = "syntax"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class UndeclaredPrefix(TurtleSyntaxError):
    code = "undeclared-prefix"


class RelativeIRI(TurtleSyntaxError):
    code = "relative-iri"


class _Parser:
    def __init__(self, text: str, base: Optional[str]):
        self.text = text
        self.pos = 0
        self.base = base
        self.prefixes: dict[str, str] = {}
        self.triples: list[Triple] = []

    # -- position helpers ---------------------------------------------------

    def where(self, pos: Optional[int] = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg: str, pos: Optional[int] = None, cls=TurtleSyntaxError):
        return cls(msg, *self.where(pos))

    def peek(self, n: int = 1) -> str:
        return self.text[self.pos : self.pos + n]

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def skip_ws(self) -> None:
        text = self.text
        while self.pos < len(text):
            c = text[self.pos]
            if c in " \t\r\n":
                self.pos += 1
            elif c == "#":
                nl = text.find("\n", self.pos)
                self.pos = len(text) if nl < 0 else nl + 1
            else:
                break

    def expect(self, s: str) -> None:
        self.skip_ws()
        if not self.text.startswith(s, self.pos):
            found = self.peek() or "end of input"
            raise self.error(f"expected {s!r}, found {found!r}")
        self.pos += len(s)

    def keyword(self, word: str, case_insensitive: bool = False) -> bool:
        """Consume ``word`` if it appears here as a whole token."""
        end = self.pos + len(word)
        chunk = self.text[self.pos : end]
        if (chunk.lower() == word.lower()) if case_insensitive else (chunk == word):
            nxt = self.text[end : end + 1]
            if not nxt or not (nxt.isalnum() or nxt in "_-:"):
                self.pos = end
                return True
        return False

    # -- grammar ------------------------------------------------------------

    def parse(self) -> Graph:
        while True:
            self.skip_ws()
            if self.at_end():
                break
            self.statement()
        return Graph(self.triples)

    def statement(self) -> None:
        if self.peek() == "@":
            if self.keyword("@prefix"):
                self.prefix_decl()
                self.expect(".")
            elif self.keyword("@base"):
                self.base_decl()
                self.expect(".")
            else:
                raise self.error("unknown directive")
            return
        if self.keyword("PREFIX", case_insensitive=True):
            self.prefix_decl()
            return
        if self.keyword("BASE", case_insensitive=True):
            self.base_decl()
            return
        subj = self.subject()
        self.predicate_object_list(subj)
        self.expect(".")

    def prefix_decl(self) -> None:
        self.skip_ws()
        start = self.pos
        name = self.pn_prefix()
        if self.peek() != ":":
            raise self.error("expected prefix name ending in ':'", start)
        self.pos += 1
        self.skip_ws()
        if self.peek() != "<":
            raise self.error("expected IRI reference in prefix declaration")
        self.prefixes[name] = self.iriref().value

    def base_decl(self) -> None:
        self.skip_ws()
        if self.peek() != "<":
            raise self.error("expected IRI reference in base declaration")
        self.base = self.iriref().value

    def subject(self) -> Term:
        self.skip_ws()
        c = self.peek()
        if c == "_" and self.peek(2) == "_:":
            return self.blank_node()
        if c == "[":
            raise self.error("blank node property lists are not supported")
        if c == "(":
            raise self.error("collections are not supported")
        if c and (c in "\"'+-" or c.isdigit()):
            raise self.error("a literal cannot be a subject")
        return self.iri()

    def predicate_object_list(self, subj: Term) -> None:
        while True:
            pred = self.verb()
            self.object_list(subj, pred)
            self.skip_ws()
            if self.peek() != ";":
                return
            while self.peek() == ";":
                self.pos += 1
                self.skip_ws()
            if self.peek() in (".", "]", ""):
                return

    def verb(self) -> IRI:
        self.skip_ws()
        if self.keyword("a"):
            return RDF_TYPE
        return self.iri()

    def object_list(self, subj: Term, pred: IRI) -> None:
        while True:
            obj = self.object()
            self.triples.append(Triple(subj, pred, obj))
            self.skip_ws()
            if self.peek() != ",":
                return
            self.pos += 1

    def object(self) -> Term:
        self.skip_ws()
        c = self.peek()
        if not c:
            raise self.error("expected object, found end of input")
        if c in "\"'":
            return self.literal()
        if self.peek(2) == "_:":
            return self.blank_node()
        if self.keyword("true"):
            return Literal("true", XSD_BOOLEAN)
        if self.keyword("false"):
            return Literal("false", XSD_BOOLEAN)
        if c == "[":
            raise self.error("blank node property lists are not supported")
        if c == "(":
            raise self.error("collections are not supported")
        if c.isdigit() or c in "+-":
            raise self.error("numeric literals are not supported; use a typed string")
        return self.iri()

    # -- terminals ----------------------------------------------------------

    def iri(self) -> IRI:
        self.skip_ws()
        if self.peek() == "<":
            return self.iriref()
        return self.prefixed_name()

    def iriref(self) -> IRI:
        start = self.pos
        self.pos += 1
        out = []
        while True:
            if self.at_end():
                raise self.error("unterminated IRI reference", start)
            c = self.text[self.pos]
            if c == ">":
                self.pos += 1
                break
            if c == "\\":
                out.append(self.unicode_escape())
                continue
            if c in ' <"{}|^`\n\t':
                raise self.error(f"illegal character {c!r} in IRI reference")
            out.append(c)
            self.pos += 1
        value = "".join(out)
        if not _SCHEME.match(value):
            if self.base is None:
                raise self.error(f"relative IRI <{value}> without a base", start, RelativeIRI)
            value = urljoin(self.base, value)
        try:
            return IRI(value)
        except GraphError as exc:
            raise self.error(str(exc), start) from None

    def unicode_escape(self) -> str:
        start = self.pos
        kind = self.text[self.pos + 1 : self.pos + 2]
        width = {"u": 4, "U": 8}.get(kind)
        if width is None:
            raise self.error("invalid escape sequence", start)
        digits = self.text[self.pos + 2 : self.pos + 2 + width]
        if len(digits) != width or not all(d in "0123456789abcdefABCDEF" for d in digits):
            raise self.error("invalid unicode escape", start)
        self.pos += 2 + width
        return chr(int(digits, 16))

    def pn_prefix(self) -> str:
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "_-."):
                self.pos += 1
            while self.text[self.pos - 1] == ".":
                self.pos -= 1
        return self.text[start : self.pos]

    def prefixed_name(self) -> IRI:
        start = self.pos
        prefix = self.pn_prefix()
        if self.peek() != ":":
            found = self.text[start : start + 10].split()[0] if not self.at_end() else "end of input"
            raise self.error(f"expected IRI, found {found!r}", start)
        self.pos += 1
        local = self.pn_local()
        if prefix not in self.prefixes:
            raise self.error(f"undeclared prefix {prefix + ':'!r}", start, UndeclaredPrefix)
        try:
            return IRI(self.prefixes[prefix] + local)
        except GraphError as exc:
            raise self.error(str(exc), start) from None

    def pn_local(self) -> str:
        out = []
        text = self.text
        while self.pos < len(text):
            c = text[self.pos]
            if c.isalnum() or c in "_:-":
                out.append(c)
                self.pos += 1
            elif c == "." and out:
                out.append(c)
                self.pos += 1
            elif c == "%":
                hexd = text[self.pos + 1 : self.pos + 3]
                if len(hexd) != 2 or not all(d in "0123456789abcdefABCDEF" for d in hexd):
                    raise self.error("invalid percent escape in local name")
                out.append(text[self.pos : self.pos + 3])
                self.pos += 3
            elif c == "\\":
                e = text[self.pos + 1 : self.pos + 2]
                if e not in _LOCAL_ESCAPABLE:
                    raise self.error("invalid escape in local name")
                out.append(e)
                self.pos += 2
            else:
                break
        # a trailing '.' terminates the statement rather than the name
        while out and out[-1] == ".":
            out.pop()
            self.pos -= 1
        return "".join(out)

    def blank_node(self) -> BNode:
        start = self.pos
        self.pos += 2
        label_start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "_-"):
            self.pos += 1
        label = self.text[label_start : self.pos]
        if not label:
            raise self.error("empty blank node label", start)
        return BNode(label)

    def literal(self) -> Literal:
        lexical = self.string()
        if self.peek() == "@":
            self.pos += 1
            tag_start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "-"):
                self.pos += 1
            tag = self.text[tag_start : self.pos]
            try:
                return Literal(lexical, language=tag)
            except GraphError as exc:
                raise self.error(str(exc), tag_start) from None
        if self.peek(2) == "^^":
            self.pos += 2
            return Literal(lexical, datatype=self.iri())
        return Literal(lexical)

    def string(self) -> str:
        start = self.pos
        q = self.peek()
        long = self.peek(3) == q * 3
        delim = q * 3 if long else q
        self.pos += len(delim)
        out = []
        text = self.text
        while True:
            if self.pos >= len(text):
                raise self.error("unterminated string literal", start)
            if text.startswith(delim, self.pos):
                # a long string may end with extra quote characters
                if long:
                    while text.startswith(delim + q, self.pos):
                        out.append(q)
                        self.pos += 1
                self.pos += len(delim)
                return "".join(out)
            c = text[self.pos]
            if c == "\\":
                e = text[self.pos + 1 : self.pos + 2]
                if e in _STRING_ESCAPES:
                    out.append(_STRING_ESCAPES[e])
                    self.pos += 2
                else:
                    out.append(self.unicode_escape())
                continue
            if not long and c in "\r\n":
                raise self.error("newline in short string literal")
            out.append(c)
            self.pos += 1


def parse_turtle(text: str, base: Optional[str] = None) -> Graph:
    """Parse a Turtle document into a graph.

    Raises :class:`TurtleSyntaxError` (or a subclass) with the 1-based
    line and column of the offending token.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if text.startswith("\ufeff"):
        text = text[1:]
    return _Parser(text, base).parse()


def _format_term(t: Term, prefixes: Mapping[str, str]) -> str:
    if isinstance(t, IRI):
        return abbreviate(t.value, prefixes)
    if isinstance(t, Literal) and t.datatype is not None:
        return '"' + escape_string(t.lexical) + '"^^' + abbreviate(t.datatype.value, prefixes)
    return t.n3()


def abbreviate(iri: str, prefixes: Mapping[str, str]) -> str:
    best = None
    for name, ns in prefixes.items():
        if iri.startswith(ns) and (best is None or len(ns) > len(prefixes[best])):
            local = iri[len(ns) :]
            if local == "" or _SAFE_LOCAL.match(local):
                best = name
    if best is None:
        return f"<{iri}>"
    return f"{best}:{iri[len(prefixes[best]):]}"


def serialize_turtle(g: Graph, prefixes: Optional[Mapping[str, str]] = None) -> str:
    """Serialize ``g`` deterministically; triples are grouped by subject and
    sorted by subject, predicate and object."""
    prefixes = dict(prefixes or {})
    lines = [f"@prefix {name}: <{ns}> ." for name, ns in sorted(prefixes.items())]
    if lines:
        lines.append("")

    by_subject: dict[Term, dict[IRI, list[Term]]] = {}
    for t in g.sorted():
        by_subject.setdefault(t.subject, {}).setdefault(t.predicate, []).append(t.object)

    for subj, preds in by_subject.items():
        parts = []
        for pred, objs in preds.items():
            verb = "a" if pred == RDF_TYPE else _format_term(pred, prefixes)
            parts.append(verb + " " + ", ".join(_format_term(o, prefixes) for o in objs))
        lines.append(_format_term(subj, prefixes) + " " + " ;\n    ".join(parts) + " .")
        lines.append("")
    return "\n".join(lines)
