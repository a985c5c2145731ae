"""Materialize extracted artifacts as a TAIR-vocabulary triple graph.

Every minted node is a named IRI and carries an rdf:type, so graphs stay
canonically serializable and comparable by set equality. Read-back views
let downstream modules (mapping, reports) work from graphs alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import vocab
from .concepts import ConceptScheme
from .document import DocumentSource
from .errors import GraphBuildError, NotFoundError
from .linking import ConceptMatch, LexicalEntry
from .rdf import Graph, Iri, Literal, Triple
from .requirements import Modality, Requirement, RequirementCollection

__all__ = [
    "build_graph",
    "collections_in",
    "concepts_in",
    "lexical_entries_in",
    "query_collection",
    "query_concepts_of",
    "query_requirements_using",
    "requirements_in",
]

_LANG = "en"


def build_graph(
    doc: DocumentSource,
    scheme: ConceptScheme,
    reqs: Iterable[Requirement],
    collections: Iterable[RequirementCollection],
    matches: Iterable[ConceptMatch],
    lex_entries: Iterable[LexicalEntry],
    base_iri: str | None = None,
) -> Graph:
    """Assemble the document graph; raises GraphBuildError on dangling IRIs."""
    base = (base_iri or doc.base_iri).rstrip("/")
    reqs = list(reqs)
    collections = list(collections)
    matches = list(matches)
    lex_entries = list(lex_entries)

    g = Graph(namespaces=dict(vocab.STANDARD_PREFIXES))
    doc_node = Iri(f"{base}/{doc.doc_id}")
    scheme_node = Iri(scheme.iri)

    def add(s: Iri, p: Iri, o):
        g.add(Triple(s, p, o))

    add(doc_node, vocab.RDF_TYPE, vocab.TAIR_DOCUMENT)
    add(doc_node, vocab.DCT_TITLE, Literal(doc.title, _LANG))
    add(doc_node, vocab.DCT_IDENTIFIER, Literal(doc.doc_id))
    add(doc_node, vocab.TAIR_DOCUMENT_TYPE, Literal(doc.doc_type.value))

    add(scheme_node, vocab.RDF_TYPE, vocab.SKOS_CONCEPT_SCHEME)
    add(scheme_node, vocab.RDFS_LABEL, Literal(f"Concept scheme: {doc.title}", _LANG))
    add(scheme_node, vocab.DCT_SOURCE, doc_node)

    concept_iris = {c.iri for c in scheme.concepts}
    for c in scheme.concepts:
        node = Iri(c.iri)
        add(node, vocab.RDF_TYPE, vocab.TAIR_CONCEPT)
        add(node, vocab.SKOS_IN_SCHEME, scheme_node)
        add(node, vocab.SKOS_PREF_LABEL, Literal(c.pref_label, _LANG))
        for alt in c.alt_labels:
            add(node, vocab.SKOS_ALT_LABEL, Literal(alt, _LANG))
        if c.definition:
            add(node, vocab.SKOS_DEFINITION, Literal(c.definition, _LANG))
        add(node, vocab.TAIR_CATEGORY, Literal(c.category.value))
        add(node, vocab.TAIR_SOURCE_CLAUSE, Literal(c.source_clause))
        for relation, predicate in (
            ("broader", vocab.SKOS_BROADER),
            ("narrower", vocab.SKOS_NARROWER),
            ("related", vocab.SKOS_RELATED),
        ):
            for target in getattr(c, relation):
                if target not in concept_iris:
                    raise GraphBuildError(
                        f"concept {c.iri} has dangling {relation} target {target}"
                    )
                add(node, predicate, Iri(target))

    req_iris = {r.iri for r in reqs}
    for r in reqs:
        node = Iri(r.iri)
        add(node, vocab.RDF_TYPE, vocab.TAIR_REQUIREMENT)
        add(node, vocab.TAIR_TEXT, Literal(r.text, _LANG))
        add(node, vocab.TAIR_MODALITY, Literal(r.modality.value))
        add(node, vocab.TAIR_SOURCE_CLAUSE, Literal(r.source_clause))
        add(node, vocab.TAIR_ORDINAL, Literal(str(r.ordinal)))

    for coll in collections:
        node = Iri(coll.iri)
        add(node, vocab.RDF_TYPE, vocab.TAIR_REQUIREMENT_COLLECTION)
        add(node, vocab.RDFS_LABEL, Literal(coll.heading, _LANG))
        add(node, vocab.TAIR_SOURCE_CLAUSE, Literal(coll.source_clause))
        add(node, vocab.DCT_SOURCE, doc_node)
        for member in coll.members:
            if member not in req_iris:
                raise GraphBuildError(
                    f"collection {coll.iri} has dangling member {member}"
                )
            add(node, vocab.TAIR_DECOMPOSES, Iri(member))

    for m in matches:
        if m.role is None:
            raise GraphBuildError(f"unassigned link role for match on {m.requirement_iri}")
        if m.concept_iri not in concept_iris:
            raise GraphBuildError(f"match references concept outside scheme: {m.concept_iri}")
        if m.requirement_iri not in req_iris:
            raise GraphBuildError(
                f"match references unknown requirement: {m.requirement_iri}"
            )
        predicate = vocab.LINK_ROLE_PREDICATES[m.role.value]
        add(Iri(m.requirement_iri), predicate, Iri(m.concept_iri))

    for entry in lex_entries:
        node = Iri(entry.iri)
        add(node, vocab.RDF_TYPE, vocab.TAIR_LEXICAL_ENTRY)
        add(node, vocab.RDFS_LABEL, Literal(entry.surface_form, _LANG))
        add(node, vocab.TAIR_NORMALIZED_FORM, Literal(entry.normalized_form))
        if entry.category is not None:
            add(node, vocab.TAIR_CATEGORY, Literal(entry.category.value))
        for occ in entry.occurrences:
            if occ not in req_iris:
                raise GraphBuildError(
                    f"lexical entry {entry.iri} occurs in unknown requirement {occ}"
                )
            add(node, vocab.TAIR_OCCURS_IN, Iri(occ))

    return g.freeze()


# --------------------------------------------------------------------------
# Typed queries

def _require_known(g: Graph, iri: str) -> Iri:
    node = Iri(iri)
    if not g.mentions(node):
        raise NotFoundError(f"IRI not present in graph: {iri}")
    return node


def query_requirements_using(g: Graph, concept_iri: str) -> list[str]:
    """Requirements linked to the concept via any of the three link roles."""
    node = _require_known(g, concept_iri)
    found: set[str] = set()
    for predicate in vocab.LINK_ROLE_PREDICATES.values():
        found.update(s.value for s in g.subjects(predicate, node))
    return sorted(found)


def query_concepts_of(g: Graph, req_iri: str) -> list[tuple[str, str]]:
    """(role, concept IRI) pairs linked from the requirement."""
    node = _require_known(g, req_iri)
    out = []
    for role, predicate in vocab.LINK_ROLE_PREDICATES.items():
        for o in g.objects(node, predicate):
            if isinstance(o, Iri):
                out.append((role, o.value))
    return sorted(out, key=lambda pair: (pair[1], pair[0]))


def query_collection(g: Graph, coll_iri: str) -> list[str]:
    """Member requirements of a collection, in ordinal order."""
    node = _require_known(g, coll_iri)
    members = [o.value for o in g.objects(node, vocab.TAIR_DECOMPOSES) if isinstance(o, Iri)]

    def sort_key(iri: str):
        ordinals = g.objects(Iri(iri), vocab.TAIR_ORDINAL)
        for o in ordinals:
            if isinstance(o, Literal) and o.lexical.isdigit():
                return (0, int(o.lexical), iri)
        return (1, 0, iri)

    return sorted(members, key=sort_key)


# --------------------------------------------------------------------------
# Read-back views

@dataclass(frozen=True)
class RequirementView:
    iri: str
    text: str
    modality: Modality | None
    source_clause: str
    ordinal: int


@dataclass(frozen=True)
class ConceptView:
    iri: str
    pref_label: str
    alt_labels: tuple[str, ...]
    definition: str
    category: str
    source_clause: str


@dataclass(frozen=True)
class LexicalEntryView:
    iri: str
    label: str
    normalized_form: str
    occurrences: tuple[str, ...]


def _first_literal(g: Graph, s: Iri, p: Iri, default: str = "") -> str:
    for o in g.objects(s, p):
        if isinstance(o, Literal):
            return o.lexical
    return default


def requirements_in(g: Graph) -> dict[str, RequirementView]:
    out = {}
    for node in g.subjects(vocab.RDF_TYPE, vocab.TAIR_REQUIREMENT):
        modality_text = _first_literal(g, node, vocab.TAIR_MODALITY)
        try:
            modality = Modality(modality_text) if modality_text else None
        except ValueError:
            modality = None
        ordinal_text = _first_literal(g, node, vocab.TAIR_ORDINAL, "0")
        out[node.value] = RequirementView(
            iri=node.value,
            text=_first_literal(g, node, vocab.TAIR_TEXT),
            modality=modality,
            source_clause=_first_literal(g, node, vocab.TAIR_SOURCE_CLAUSE),
            ordinal=int(ordinal_text) if ordinal_text.isdigit() else 0,
        )
    return out


def concepts_in(g: Graph) -> dict[str, ConceptView]:
    out = {}
    for node in g.subjects(vocab.RDF_TYPE, vocab.TAIR_CONCEPT):
        alts = tuple(
            o.lexical for o in g.objects(node, vocab.SKOS_ALT_LABEL) if isinstance(o, Literal)
        )
        out[node.value] = ConceptView(
            iri=node.value,
            pref_label=_first_literal(g, node, vocab.SKOS_PREF_LABEL),
            alt_labels=alts,
            definition=_first_literal(g, node, vocab.SKOS_DEFINITION),
            category=_first_literal(g, node, vocab.TAIR_CATEGORY, "unclassified"),
            source_clause=_first_literal(g, node, vocab.TAIR_SOURCE_CLAUSE),
        )
    return out


def lexical_entries_in(g: Graph) -> dict[str, LexicalEntryView]:
    out = {}
    for node in g.subjects(vocab.RDF_TYPE, vocab.TAIR_LEXICAL_ENTRY):
        occurrences = tuple(
            o.value for o in g.objects(node, vocab.TAIR_OCCURS_IN) if isinstance(o, Iri)
        )
        out[node.value] = LexicalEntryView(
            iri=node.value,
            label=_first_literal(g, node, vocab.RDFS_LABEL),
            normalized_form=_first_literal(g, node, vocab.TAIR_NORMALIZED_FORM),
            occurrences=occurrences,
        )
    return out


def collections_in(g: Graph) -> dict[str, tuple[str, str, tuple[str, ...]]]:
    """collection IRI -> (heading, source clause, ordered members)."""
    out = {}
    for node in g.subjects(vocab.RDF_TYPE, vocab.TAIR_REQUIREMENT_COLLECTION):
        out[node.value] = (
            _first_literal(g, node, vocab.RDFS_LABEL),
            _first_literal(g, node, vocab.TAIR_SOURCE_CLAUSE),
            tuple(query_collection(g, node.value)),
        )
    return out
