"""Linking requirements to defined concepts and harvesting lexical entries.

Concept mentions are found by longest-match-wins phrase matching over
pref/alt labels (case-insensitive, trailing-s/es plural tolerance). Link
roles follow the subject rule: the first actor concept before the governing
modal implements the requirement, other actors track it, everything else is
used by it. Lexicon phrases that occur in requirements but match no defined
concept become lexical entries.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Sequence

from .concepts import Category, ConceptScheme, mint_iri, slugify
from .errors import LexiconError
from .requirements import Requirement, first_modal_position

__all__ = [
    "ConceptMatch",
    "LexicalEntry",
    "LinkRole",
    "align_lexical_entries",
    "assign_link_roles",
    "canonical_phrase",
    "harvest_lexical_entries",
    "link_concepts",
    "load_lexicon",
    "match_concepts",
    "tokenize",
]


class LinkRole(str, Enum):
    USES = "uses"
    IMPLEMENTED_BY = "implementedBy"
    TRACKED_BY = "trackedBy"


@dataclass(frozen=True)
class ConceptMatch:
    requirement_iri: str
    concept_iri: str
    surface: str
    role: LinkRole | None = None
    start: int = -1


@dataclass(frozen=True)
class LexicalEntry:
    iri: str
    surface_form: str
    normalized_form: str
    occurrences: tuple[str, ...]
    alignment_candidates: tuple[tuple[str, str], ...] = ()
    category: Category | None = None


# --------------------------------------------------------------------------
# Token machinery

_TOKEN = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def _token_spans(text: str) -> list[tuple[str, int, int]]:
    return [(m.group(), m.start(), m.end()) for m in _TOKEN.finditer(text.lower())]


def _plural_forms(token: str) -> set[str]:
    forms = {token}
    if len(token) > 4 and token.endswith("es"):
        forms.add(token[:-2])
    if len(token) > 3 and token.endswith("s") and not token.endswith("ss"):
        forms.add(token[:-1])
    return forms


def _tokens_equal(a: str, b: str) -> bool:
    return a == b or bool(_plural_forms(a) & _plural_forms(b))


def _canonical_token(token: str) -> str:
    # "ss"/"us"/"is" endings stay (process, status, basis); bare plural -s drops.
    if (
        len(token) > 3
        and token.endswith("s")
        and not token.endswith(("ss", "us", "is"))
    ):
        return token[:-1]
    return token


def canonical_phrase(text: str) -> str:
    """Lowercased, plural-normalized token form used for label comparison."""
    return " ".join(_canonical_token(t) for t in tokenize(text))


def _find_occurrences(
    phrase_tokens: Sequence[str], spans: Sequence[tuple[str, int, int]]
) -> list[tuple[int, int]]:
    """All token-index windows where the phrase matches (plural-tolerant)."""
    hits = []
    k = len(phrase_tokens)
    for i in range(len(spans) - k + 1):
        if all(_tokens_equal(spans[i + j][0], phrase_tokens[j]) for j in range(k)):
            hits.append((i, i + k))
    return hits


# --------------------------------------------------------------------------
# Concept matching

def match_concepts(req: Requirement, scheme: ConceptScheme) -> list[ConceptMatch]:
    """Concept mentions in a requirement text, longest label wins.

    Labels are matched case-insensitively with trailing-s/es tolerance on
    each token; once a span is claimed by a longer label, shorter labels
    cannot reuse its tokens. Each concept is reported at most once per
    requirement, at its first surface position.
    """
    spans = _token_spans(req.text)
    labels: list[tuple[tuple[str, ...], str, str]] = []
    for concept in scheme.concepts:
        for label in (concept.pref_label, *concept.alt_labels):
            toks = tuple(tokenize(label))
            if toks:
                labels.append((toks, label, concept.iri))
    labels.sort(key=lambda item: (-len(item[0]), item[1].lower(), item[2]))

    consumed: set[int] = set()
    first_hit: dict[str, tuple[int, int]] = {}
    for toks, _, concept_iri in labels:
        for i, j in _find_occurrences(toks, spans):
            indices = range(i, j)
            if any(ix in consumed for ix in indices):
                continue
            consumed.update(indices)
            char_span = (spans[i][1], spans[j - 1][2])
            if concept_iri not in first_hit or char_span < first_hit[concept_iri]:
                first_hit[concept_iri] = char_span

    matches = [
        ConceptMatch(
            requirement_iri=req.iri,
            concept_iri=concept_iri,
            surface=req.text[start:end],
            start=start,
        )
        for concept_iri, (start, end) in first_hit.items()
    ]
    matches.sort(key=lambda m: (m.start, m.concept_iri))
    return matches


def assign_link_roles(
    req: Requirement, matches: Iterable[ConceptMatch], scheme: ConceptScheme
) -> list[ConceptMatch]:
    """Assign uses/implementedBy/trackedBy roles to raw matches."""
    by_iri = scheme.by_iri()
    modal_pos = first_modal_position(req.text)
    ordered = sorted(matches, key=lambda m: (m.start, m.concept_iri))

    implementer: str | None = None
    if modal_pos is not None:
        for m in ordered:
            if by_iri[m.concept_iri].category is Category.ACTOR and 0 <= m.start < modal_pos:
                implementer = m.concept_iri
                break

    assigned = []
    for m in ordered:
        if m.concept_iri == implementer:
            role = LinkRole.IMPLEMENTED_BY
        elif by_iri[m.concept_iri].category is Category.ACTOR:
            role = LinkRole.TRACKED_BY
        else:
            role = LinkRole.USES
        assigned.append(replace(m, role=role))
    return assigned


def link_concepts(
    reqs: Iterable[Requirement], scheme: ConceptScheme
) -> list[ConceptMatch]:
    """Match and role-assign concepts for a batch of requirements."""
    out: list[ConceptMatch] = []
    for req in reqs:
        out.extend(assign_link_roles(req, match_concepts(req, scheme), scheme))
    return out


# --------------------------------------------------------------------------
# Lexical entries

def load_lexicon(text: str) -> list[tuple[str, Category | None]]:
    """Parse a lexicon file: one phrase per line, optional `category=` suffix."""
    phrases: list[tuple[str, Category | None]] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        category: Category | None = None
        m = re.search(r"\bcategory=(\S+)\s*$", line)
        if m:
            value = m.group(1).lower()
            if value not in (c.value for c in Category):
                raise LexiconError(f"lexicon line {lineno}: unknown category '{value}'")
            category = Category(value)
            line = line[: m.start()].strip()
        phrase = line.lower()
        if not phrase:
            raise LexiconError(f"lexicon line {lineno}: empty phrase")
        key = canonical_phrase(phrase)
        if key in seen:
            raise LexiconError(f"lexicon line {lineno}: duplicate phrase '{phrase}'")
        seen.add(key)
        phrases.append((phrase, category))
    return phrases


def harvest_lexical_entries(
    reqs: Iterable[Requirement],
    scheme: ConceptScheme,
    lexicon: Iterable[tuple[str, Category | None]],
) -> list[LexicalEntry]:
    """Lexicon phrases that occur in requirements but are not defined terms.

    Each surviving phrase yields one entry aggregating every requirement it
    occurs in. Phrases whose normalized form equals a defined concept label
    are dropped, as are phrases with no occurrences.
    """
    reqs = list(reqs)
    defined = {
        canonical_phrase(label)
        for c in scheme.concepts
        for label in (c.pref_label, *c.alt_labels)
    }
    req_spans = [(r, _token_spans(r.text)) for r in reqs]

    entries: list[LexicalEntry] = []
    for phrase, category in lexicon:
        canon = canonical_phrase(phrase)
        if not canon or canon in defined:
            continue
        toks = tuple(tokenize(phrase))
        occurrences = tuple(
            r.iri for r, spans in req_spans if _find_occurrences(toks, spans)
        )
        if not occurrences:
            continue
        entries.append(
            LexicalEntry(
                iri=mint_iri(scheme.base_iri, scheme.doc_id, "lexical", slugify(canon)),
                surface_form=phrase,
                normalized_form=canon,
                occurrences=occurrences,
                category=category,
            )
        )
    return entries


def align_lexical_entries(
    entries: Iterable[LexicalEntry], other_schemes: Iterable[ConceptScheme]
) -> list[LexicalEntry]:
    """Fill alignment candidates: other documents' concepts with equal labels."""
    schemes = list(other_schemes)
    out = []
    for entry in entries:
        candidates = []
        for scheme in schemes:
            for concept in scheme.concepts:
                labels = (concept.pref_label, *concept.alt_labels)
                if any(canonical_phrase(l) == entry.normalized_form for l in labels):
                    candidates.append((scheme.doc_id, concept.iri))
        out.append(replace(entry, alignment_candidates=tuple(sorted(candidates))))
    return out
