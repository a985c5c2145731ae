"""tairkit: clause-structured normative texts to TAIR knowledge graphs.

Parse annotated regulation/standard texts, extract concepts and atomic
requirements, link them, materialize a canonical triple graph, assess
regulation-to-standard coverage, and lint the result for ontology pitfalls.
"""

from .concepts import (
    Category,
    Concept,
    ConceptScheme,
    apply_relations,
    build_concept_scheme,
    extract_definitions,
    infer_semantic_relations,
)
from .document import (
    Clause,
    ClauseKind,
    DefinitionEntry,
    DocType,
    DocumentSource,
    clause_at,
    format_document,
    parse_document,
    sentences_of,
)
from .kg import (
    build_graph,
    query_collection,
    query_concepts_of,
    query_requirements_using,
)
from .linking import (
    ConceptMatch,
    LexicalEntry,
    LinkRole,
    assign_link_roles,
    harvest_lexical_entries,
    match_concepts,
)
from .mapping import (
    CoverageReport,
    MappingAssertion,
    MappingKind,
    PartialReason,
    StrictnessDelta,
    apply_curation,
    coverage_report,
    propose_alignments,
    strictness_delta,
)
from .pipeline import DocumentArtifacts, build_artifacts, load_artifacts
from .pitfalls import (
    Pitfall,
    PitfallReport,
    ScanConfig,
    scan,
    scan_missing_annotations,
    scan_missing_inverses,
    scan_unconnected,
)
from .rdf import (
    Graph,
    Iri,
    Literal,
    Triple,
    isomorphic,
    parse_ntriples,
    serialize_ntriples,
    serialize_turtle,
)
from .requirements import (
    Modality,
    Requirement,
    RequirementCollection,
    atomize_requirement,
    classify_modality,
    extract_requirements,
)

__version__ = "0.1.0"
