"""Named-node-only triple graph with canonical serialization.

No blank nodes anywhere, so graph comparison is plain set equality and the
canonical Turtle / N-Triples forms are pure functions of the triple set:
subjects, predicates, and objects are emitted in sorted order, insertion
order never leaks into the bytes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InvariantError, ParseError

__all__ = [
    "Graph",
    "Iri",
    "Literal",
    "Triple",
    "isomorphic",
    "parse_ntriples",
    "serialize_ntriples",
    "serialize_turtle",
]


@dataclass(frozen=True)
class Iri:
    value: str


@dataclass(frozen=True)
class Literal:
    lexical: str
    lang: str | None = None


@dataclass(frozen=True)
class Triple:
    s: Iri
    p: Iri
    o: Iri | Literal


def _object_key(o: Iri | Literal) -> tuple:
    if isinstance(o, Iri):
        return (0, o.value, "")
    return (1, o.lexical, o.lang or "")


def _triple_key(t: Triple) -> tuple:
    return (t.s.value, t.p.value, *_object_key(t.o))


class Graph:
    """A mutable-until-frozen set of triples plus a prefix map."""

    def __init__(self, namespaces: dict[str, str] | None = None):
        self._triples: set[Triple] = set()
        self.namespaces: dict[str, str] = dict(namespaces or {})
        self._frozen = False

    @classmethod
    def from_triples(
        cls, triples: Iterable[Triple], namespaces: dict[str, str] | None = None
    ) -> "Graph":
        g = cls(namespaces)
        g.add_all(triples)
        return g

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> "Graph":
        self._frozen = True
        return self

    def add(self, triple: Triple) -> None:
        if self._frozen:
            raise InvariantError("graph is frozen")
        self._triples.add(triple)

    def add_all(self, triples: Iterable[Triple]) -> None:
        for t in triples:
            self.add(t)

    def triples(self) -> frozenset[Triple]:
        return frozenset(self._triples)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self._triples, key=_triple_key))

    # -- small query helpers -------------------------------------------------

    def objects(self, s: Iri, p: Iri) -> list[Iri | Literal]:
        return sorted(
            (t.o for t in self._triples if t.s == s and t.p == p), key=_object_key
        )

    def subjects(self, p: Iri, o: Iri | Literal) -> list[Iri]:
        return sorted(
            {t.s for t in self._triples if t.p == p and t.o == o},
            key=lambda i: i.value,
        )

    def predicates_objects(self, s: Iri) -> list[tuple[Iri, Iri | Literal]]:
        return sorted(
            ((t.p, t.o) for t in self._triples if t.s == s),
            key=lambda po: (po[0].value, *_object_key(po[1])),
        )

    def subjects_of_type(self, type_iri: Iri, rdf_type: Iri) -> list[Iri]:
        return self.subjects(rdf_type, type_iri)

    def mentions(self, iri: Iri) -> bool:
        """True when the IRI occurs anywhere in the graph."""
        return any(t.s == iri or t.p == iri or t.o == iri for t in self._triples)


def isomorphic(g1: Graph, g2: Graph) -> bool:
    """With named nodes only, isomorphism collapses to set equality."""
    return g1.triples() == g2.triples()


# --------------------------------------------------------------------------
# Escaping

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _escape(text: str) -> str:
    out = []
    for ch in text:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


_UNESCAPE_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)")


def _unescape(text: str, line: int) -> str:
    def repl(m: re.Match) -> str:
        code = m.group(1)
        if code.startswith(("u", "U")):
            return chr(int(code[1:], 16))
        simple = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}
        if code in simple:
            return simple[code]
        raise ParseError(f"invalid escape sequence '\\{code}'", line)

    return _UNESCAPE_RE.sub(repl, text)


def _format_object(o: Iri | Literal) -> str:
    if isinstance(o, Iri):
        return f"<{o.value}>"
    rendered = f'"{_escape(o.lexical)}"'
    if o.lang:
        rendered += f"@{o.lang}"
    return rendered


# --------------------------------------------------------------------------
# N-Triples

def serialize_ntriples(g: Graph) -> str:
    """Canonical N-Triples: one sorted triple per line."""
    lines = [
        f"<{t.s.value}> <{t.p.value}> {_format_object(t.o)} ."
        for t in sorted(g.triples(), key=_triple_key)
    ]
    return "\n".join(lines) + ("\n" if lines else "")


_NT_LINE = re.compile(r"^<([^<>\s]+)>\s+<([^<>\s]+)>\s+(.+?)\s*\.$")
_NT_LITERAL = re.compile(r'^"((?:[^"\\]|\\.)*)"(?:@([A-Za-z][A-Za-z0-9-]*))?$')


def parse_ntriples(text: str, namespaces: dict[str, str] | None = None) -> Graph:
    """Parse N-Triples text; inverts serialize_ntriples."""
    g = Graph(namespaces)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("_:") or " _:" in line:
            raise ParseError("blank nodes are not supported", lineno)
        m = _NT_LINE.match(line)
        if not m:
            raise ParseError(f"malformed N-Triples line: {line!r}", lineno)
        s, p, obj_text = m.groups()
        obj: Iri | Literal
        if obj_text.startswith("<") and obj_text.endswith(">"):
            inner = obj_text[1:-1]
            if "<" in inner or ">" in inner or " " in inner:
                raise ParseError(f"malformed IRI object: {obj_text!r}", lineno)
            obj = Iri(inner)
        else:
            lm = _NT_LITERAL.match(obj_text)
            if not lm:
                raise ParseError(f"malformed object term: {obj_text!r}", lineno)
            obj = Literal(_unescape(lm.group(1), lineno), lm.group(2))
        g.add(Triple(Iri(s), Iri(p), obj))
    return g.freeze()


# --------------------------------------------------------------------------
# Turtle

_RDF_TYPE_VALUE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
_PN_LOCAL = re.compile(r"^[A-Za-z_][A-Za-z0-9_-]*$")


def _prefixed(iri: Iri, namespaces: dict[str, str]) -> str:
    for prefix, ns in sorted(namespaces.items()):
        if iri.value.startswith(ns):
            local = iri.value[len(ns):]
            if _PN_LOCAL.match(local):
                return f"{prefix}:{local}"
    return f"<{iri.value}>"


def _turtle_object(o: Iri | Literal, namespaces: dict[str, str]) -> str:
    if isinstance(o, Iri):
        return _prefixed(o, namespaces)
    rendered = f'"{_escape(o.lexical)}"'
    if o.lang:
        rendered += f"@{o.lang}"
    return rendered


def serialize_turtle(g: Graph) -> str:
    """Canonical Turtle: sorted prefixes, subject blocks, sorted predicates."""
    ns = g.namespaces
    out = [f"@prefix {prefix}: <{ns[prefix]}> ." for prefix in sorted(ns)]
    if out:
        out.append("")

    by_subject: dict[str, list[Triple]] = {}
    for t in g.triples():
        by_subject.setdefault(t.s.value, []).append(t)

    for idx, subject in enumerate(sorted(by_subject)):
        if idx:
            out.append("")
        rows = sorted(by_subject[subject], key=_triple_key)
        lines = []
        for t in rows:
            pred = "a" if t.p.value == _RDF_TYPE_VALUE else _prefixed(t.p, ns)
            lines.append(f"    {pred} {_turtle_object(t.o, ns)}")
        out.append(f"<{subject}>")
        out.extend(f"{line} ;" for line in lines[:-1])
        out.append(f"{lines[-1]} .")
    return "\n".join(out) + "\n"
