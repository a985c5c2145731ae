"""End-to-end orchestration: text file in, linked graph artifacts out."""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .concepts import (
    Category,
    ConceptScheme,
    apply_relations,
    build_concept_scheme,
    extract_definitions,
    infer_semantic_relations,
    load_category_map,
)
from .document import DocumentSource, parse_document
from .kg import build_graph
from .linking import (
    ConceptMatch,
    LexicalEntry,
    align_lexical_entries,
    harvest_lexical_entries,
    link_concepts,
    load_lexicon,
)
from .rdf import Graph
from .requirements import Requirement, RequirementCollection, extract_requirements

__all__ = ["DocumentArtifacts", "build_artifacts", "load_artifacts"]


@dataclass(frozen=True)
class DocumentArtifacts:
    """Everything extracted from one document, plus its graph."""

    doc: DocumentSource
    scheme: ConceptScheme
    relation_edges: tuple[tuple[str, str, str], ...]
    requirements: tuple[Requirement, ...]
    collections: tuple[RequirementCollection, ...]
    matches: tuple[ConceptMatch, ...]
    lexical_entries: tuple[LexicalEntry, ...]
    graph: Graph
    diagnostics: tuple[str, ...]


def build_artifacts(
    text: str,
    base_iri: str | None = None,
    categories: dict[str, Category] | None = None,
    lexicon: list[tuple[str, Category | None]] | None = None,
) -> DocumentArtifacts:
    """Run the full extraction pipeline over annotated-clause text."""
    doc = parse_document(text, base_iri)
    defs = extract_definitions(doc)
    scheme = build_concept_scheme(defs, categories or {}, doc.base_iri, doc.doc_id)
    edges = infer_semantic_relations(scheme, defs)
    scheme = apply_relations(scheme, edges)

    diagnostics: list[str] = []
    reqs, collections = extract_requirements(doc, diagnostics=diagnostics)
    matches = link_concepts(reqs, scheme)
    entries = harvest_lexical_entries(reqs, scheme, lexicon or [])
    graph = build_graph(doc, scheme, reqs, collections, matches, entries)
    return DocumentArtifacts(
        doc=doc,
        scheme=scheme,
        relation_edges=tuple(edges),
        requirements=tuple(reqs),
        collections=tuple(collections),
        matches=tuple(matches),
        lexical_entries=tuple(entries),
        graph=graph,
        diagnostics=tuple(diagnostics),
    )


def load_artifacts(
    path: str | Path,
    categories_path: str | Path | None = None,
    lexicon_path: str | Path | None = None,
    base_iri: str | None = None,
) -> DocumentArtifacts:
    """build_artifacts with inputs read from disk."""
    text = Path(path).read_text(encoding="utf-8")
    categories = (
        load_category_map(Path(categories_path).read_text(encoding="utf-8"))
        if categories_path
        else None
    )
    lexicon = (
        load_lexicon(Path(lexicon_path).read_text(encoding="utf-8"))
        if lexicon_path
        else None
    )
    return build_artifacts(text, base_iri=base_iri, categories=categories, lexicon=lexicon)


def align_artifacts(
    artifacts: DocumentArtifacts, others: list[DocumentArtifacts]
) -> DocumentArtifacts:
    """Fill lexical-entry alignment candidates from the other documents' schemes."""
    aligned = align_lexical_entries(
        artifacts.lexical_entries, [o.scheme for o in others]
    )
    return replace(artifacts, lexical_entries=tuple(aligned))
