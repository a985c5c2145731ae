"""Vocabulary namespaces, term constants, and the inverse-declaration manifest.

The tair namespace holds the graph vocabulary used by this tool; annotation
predicates beyond the core relations (uses, implementedBy, trackedBy,
decomposes, occursIn) are plumbing and documented in the README.
"""

from __future__ import annotations

from .errors import ManifestError
from .rdf import Iri

TAIR = "https://w3id.org/tair#"
SKOS = "http://www.w3.org/2004/02/skos/core#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
DCT = "http://purl.org/dc/terms/"
OWL = "http://www.w3.org/2002/07/owl#"
XSD = "http://www.w3.org/2001/XMLSchema#"

STANDARD_PREFIXES = {
    "dct": DCT,
    "rdf": RDF,
    "rdfs": RDFS,
    "skos": SKOS,
    "tair": TAIR,
}

# Namespaces whose subjects are defined elsewhere; linting treats them as
# external references rather than local elements.
EXTERNAL_NAMESPACES = (SKOS, RDF, RDFS, DCT, OWL, XSD)

RDF_TYPE = Iri(RDF + "type")
RDFS_LABEL = Iri(RDFS + "label")
RDFS_COMMENT = Iri(RDFS + "comment")

DCT_TITLE = Iri(DCT + "title")
DCT_IDENTIFIER = Iri(DCT + "identifier")
DCT_DESCRIPTION = Iri(DCT + "description")
DCT_SOURCE = Iri(DCT + "source")

SKOS_CONCEPT_SCHEME = Iri(SKOS + "ConceptScheme")
SKOS_PREF_LABEL = Iri(SKOS + "prefLabel")
SKOS_ALT_LABEL = Iri(SKOS + "altLabel")
SKOS_DEFINITION = Iri(SKOS + "definition")
SKOS_BROADER = Iri(SKOS + "broader")
SKOS_NARROWER = Iri(SKOS + "narrower")
SKOS_RELATED = Iri(SKOS + "related")
SKOS_IN_SCHEME = Iri(SKOS + "inScheme")

TAIR_CONCEPT = Iri(TAIR + "Concept")
TAIR_REQUIREMENT = Iri(TAIR + "Requirement")
TAIR_REQUIREMENT_COLLECTION = Iri(TAIR + "RequirementCollection")
TAIR_LEXICAL_ENTRY = Iri(TAIR + "LexicalEntry")
TAIR_DOCUMENT = Iri(TAIR + "Document")

TAIR_USES = Iri(TAIR + "uses")
TAIR_IMPLEMENTED_BY = Iri(TAIR + "implementedBy")
TAIR_TRACKED_BY = Iri(TAIR + "trackedBy")
TAIR_DECOMPOSES = Iri(TAIR + "decomposes")
TAIR_OCCURS_IN = Iri(TAIR + "occursIn")

TAIR_TEXT = Iri(TAIR + "text")
TAIR_MODALITY = Iri(TAIR + "modality")
TAIR_SOURCE_CLAUSE = Iri(TAIR + "sourceClause")
TAIR_ORDINAL = Iri(TAIR + "ordinal")
TAIR_CATEGORY = Iri(TAIR + "category")
TAIR_NORMALIZED_FORM = Iri(TAIR + "normalizedForm")
TAIR_DOCUMENT_TYPE = Iri(TAIR + "documentType")

LINK_ROLE_PREDICATES = {
    "uses": TAIR_USES,
    "implementedBy": TAIR_IMPLEMENTED_BY,
    "trackedBy": TAIR_TRACKED_BY,
}

LABEL_PREDICATES = frozenset({RDFS_LABEL, SKOS_PREF_LABEL, DCT_TITLE})
DESCRIPTION_PREDICATES = frozenset(
    {RDFS_COMMENT, SKOS_DEFINITION, DCT_DESCRIPTION, TAIR_TEXT}
)

_DEFAULT_INVERSE_PAIRS = (
    (SKOS_BROADER, SKOS_NARROWER),
    (SKOS_RELATED, SKOS_RELATED),
    (SKOS_IN_SCHEME, Iri(TAIR + "schemeContains")),
    (TAIR_USES, Iri(TAIR + "usedBy")),
    (TAIR_IMPLEMENTED_BY, Iri(TAIR + "implements")),
    (TAIR_TRACKED_BY, Iri(TAIR + "tracks")),
    (TAIR_DECOMPOSES, Iri(TAIR + "decomposedBy")),
    (TAIR_OCCURS_IN, Iri(TAIR + "mentions")),
)


def default_inverses() -> dict[Iri, Iri]:
    """Symmetric closure of the built-in inverse declarations."""
    inverses: dict[Iri, Iri] = {}
    for a, b in _DEFAULT_INVERSE_PAIRS:
        inverses[a] = b
        inverses[b] = a
    return inverses


def expand_curie(term: str) -> Iri:
    """Resolve `prefix:local` against the standard prefixes; full IRIs pass through."""
    if term.startswith(("http://", "https://")):
        return Iri(term)
    prefix, sep, local = term.partition(":")
    if not sep or prefix not in STANDARD_PREFIXES:
        raise ManifestError(f"cannot resolve term '{term}': unknown prefix")
    return Iri(STANDARD_PREFIXES[prefix] + local)


def load_manifest(text: str) -> dict[Iri, Iri]:
    """Parse a vocabulary manifest into a symmetric inverse map.

    One property per line, optional `inverse=` attribute::

        skos:broader inverse=skos:narrower
        tair:uses inverse=tair:usedBy

    Lines without `inverse=` declare the property but leave it inverse-less.
    """
    inverses: dict[Iri, Iri] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 1:
            expand_curie(parts[0])  # validate only
            continue
        if len(parts) != 2 or not parts[1].startswith("inverse="):
            raise ManifestError(
                f"manifest line {lineno}: expected '<property> [inverse=<property>]'"
            )
        try:
            prop = expand_curie(parts[0])
            inv = expand_curie(parts[1][len("inverse="):])
        except ManifestError as exc:
            raise ManifestError(f"manifest line {lineno}: {exc}") from None
        inverses[prop] = inv
        inverses[inv] = prop
    return inverses
