"""Concept scheme construction from terminology sections.

Defined terms become concepts with stable IRIs; hierarchy comes from the
nesting of the terminology list (parent subclause term is broader), and
cross-references between definitions become `related` links.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Mapping

from .document import DefinitionEntry, DocumentSource, ClauseKind
from .errors import CycleError, SchemeError

__all__ = [
    "Category",
    "Concept",
    "ConceptScheme",
    "apply_relations",
    "build_concept_scheme",
    "extract_definitions",
    "infer_semantic_relations",
    "load_category_map",
    "slugify",
]


class Category(str, Enum):
    ACTOR = "actor"
    ARTEFACT = "artefact"
    PROCESS = "process"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class Concept:
    iri: str
    pref_label: str
    definition: str
    source_clause: str
    category: Category = Category.UNCLASSIFIED
    alt_labels: tuple[str, ...] = ()
    broader: tuple[str, ...] = ()
    narrower: tuple[str, ...] = ()
    related: tuple[str, ...] = ()


@dataclass(frozen=True)
class ConceptScheme:
    iri: str
    doc_id: str
    base_iri: str
    concepts: tuple[Concept, ...]

    def by_iri(self) -> dict[str, Concept]:
        return {c.iri: c for c in self.concepts}

    def find_label(self, label: str) -> Concept | None:
        wanted = label.lower()
        for c in self.concepts:
            if c.pref_label.lower() == wanted:
                return c
            if any(a.lower() == wanted for a in c.alt_labels):
                return c
        return None


def slugify(text: str) -> str:
    """Lowercase, non-alphanumerics to single dashes, trimmed."""
    return re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")


def mint_iri(base_iri: str, doc_id: str, *path: str) -> str:
    return "/".join([base_iri.rstrip("/"), doc_id, *path])


def extract_definitions(doc: DocumentSource) -> list[DefinitionEntry]:
    """All definition entries from definitional clauses, in document order."""
    entries: list[DefinitionEntry] = []
    for clause in doc.iter_clauses():
        if clause.kind is ClauseKind.DEFINITIONAL:
            entries.extend(clause.defs)
    return entries


def load_category_map(text: str) -> dict[str, Category]:
    """Parse a category map file: one `term = actor|artefact|process` per line."""
    mapping: dict[str, Category] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SchemeError(f"category map line {lineno}: expected 'term = category'")
        term, _, value = line.partition("=")
        term = term.strip().lower()
        value = value.strip().lower()
        if value not in (Category.ACTOR.value, Category.ARTEFACT.value, Category.PROCESS.value):
            raise SchemeError(f"category map line {lineno}: unknown category '{value}'")
        if term in mapping:
            raise SchemeError(f"category map line {lineno}: duplicate term '{term}'")
        mapping[term] = Category(value)
    return mapping


def build_concept_scheme(
    defs: Iterable[DefinitionEntry],
    categories: Mapping[str, Category | str],
    base_iri: str,
    doc_id: str,
) -> ConceptScheme:
    """One concept per definition entry; category comes from the curated map."""
    defs = list(defs)
    cat_map = {k.lower(): Category(v) for k, v in categories.items()}
    terms = {d.term.lower() for d in defs}
    unknown = sorted(k for k in cat_map if k not in terms)
    if unknown:
        raise SchemeError(f"category map names undefined terms: {unknown}")

    concepts: list[Concept] = []
    seen: dict[str, str] = {}
    for d in defs:
        key = d.term.lower()
        if key in seen:
            raise SchemeError(f"duplicate term '{d.term}' (also defined as '{seen[key]}')")
        seen[key] = d.term
        concepts.append(
            Concept(
                iri=mint_iri(base_iri, doc_id, "concept", slugify(d.term)),
                pref_label=d.term,
                definition=d.definition_text,
                source_clause=d.source_clause,
                category=cat_map.get(key, Category.UNCLASSIFIED),
            )
        )
    return ConceptScheme(
        iri=mint_iri(base_iri, doc_id, "scheme"),
        doc_id=doc_id,
        base_iri=base_iri,
        concepts=tuple(concepts),
    )


def infer_semantic_relations(
    scheme: ConceptScheme, defs: Iterable[DefinitionEntry]
) -> list[tuple[str, str, str]]:
    """Derive (source, relation, target) edges from the terminology structure.

    Subclause nesting yields `broader` (child term -> parent term); each
    cross-reference yields `related` between the defining and the referenced
    concept unless a broader edge already connects the pair.
    """
    defs = list(defs)
    by_term = {c.pref_label.lower(): c.iri for c in scheme.concepts}
    path_index: dict[tuple[str, str], str] = {}
    for d in defs:
        path_index[(d.source_clause, d.subclause_path)] = by_term[d.term.lower()]

    edges: list[tuple[str, str, str]] = []
    broader_pairs: set[frozenset[str]] = set()
    for d in defs:
        if "." not in d.subclause_path:
            continue
        parent_path = d.subclause_path.rsplit(".", 1)[0]
        parent_iri = path_index.get((d.source_clause, parent_path))
        if parent_iri is None:
            continue
        child_iri = by_term[d.term.lower()]
        edges.append((child_iri, "broader", parent_iri))
        broader_pairs.add(frozenset((child_iri, parent_iri)))

    _check_acyclic(e for e in edges if e[1] == "broader")

    related_seen: set[frozenset[str]] = set()
    for d in defs:
        source = by_term[d.term.lower()]
        for ref in d.cross_refs:
            target = by_term.get(ref.lower())
            if target is None or target == source:
                continue
            pair = frozenset((source, target))
            if pair in broader_pairs or pair in related_seen:
                continue
            related_seen.add(pair)
            edges.append((source, "related", target))
    return edges


def _check_acyclic(broader_edges: Iterable[tuple[str, str, str]]) -> None:
    graph: dict[str, list[str]] = {}
    for source, _, target in broader_edges:
        graph.setdefault(source, []).append(target)
    state: dict[str, int] = {}
    stack: list[str] = []

    def visit(node: str):
        state[node] = 1
        stack.append(node)
        for nxt in graph.get(node, ()):
            if state.get(nxt) == 1:
                cycle = stack[stack.index(nxt) :] + [nxt]
                raise CycleError("broader cycle: " + " -> ".join(cycle))
            if state.get(nxt, 0) == 0:
                visit(nxt)
        stack.pop()
        state[node] = 2

    for node in sorted(graph):
        if state.get(node, 0) == 0:
            visit(node)


def apply_relations(
    scheme: ConceptScheme, edges: Iterable[tuple[str, str, str]]
) -> ConceptScheme:
    """Return a new scheme with edges applied and inverse closure maintained."""
    known = scheme.by_iri()
    broader: dict[str, set[str]] = {iri: set(c.broader) for iri, c in known.items()}
    narrower: dict[str, set[str]] = {iri: set(c.narrower) for iri, c in known.items()}
    related: dict[str, set[str]] = {iri: set(c.related) for iri, c in known.items()}

    for source, relation, target in edges:
        if source not in known or target not in known:
            raise SchemeError(f"relation edge references unknown concept: {source} -> {target}")
        if source == target:
            raise SchemeError(f"reflexive {relation} edge on {source}")
        if relation == "broader":
            broader[source].add(target)
            narrower[target].add(source)
        elif relation == "related":
            related[source].add(target)
            related[target].add(source)
        else:
            raise SchemeError(f"unknown relation kind '{relation}'")

    flat = [
        (s, "broader", t) for s, targets in sorted(broader.items()) for t in sorted(targets)
    ]
    _check_acyclic(flat)

    concepts = tuple(
        replace(
            c,
            broader=tuple(sorted(broader[c.iri])),
            narrower=tuple(sorted(narrower[c.iri])),
            related=tuple(sorted(related[c.iri])),
        )
        for c in scheme.concepts
    )
    return replace(scheme, concepts=concepts)
