"""Normative requirement extraction.

Detects the governing modal of a sentence, atomizes multi-obligation
sentences, and groups the resulting requirements into per-clause
collections with deterministic IRIs and ordering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .concepts import mint_iri
from .document import Clause, ClauseKind, DocumentSource, sentences_of

__all__ = [
    "Modality",
    "Requirement",
    "RequirementCollection",
    "atomize_requirement",
    "classify_modality",
    "extract_requirements",
    "modal_diagnostics",
]


class Modality(str, Enum):
    SHALL = "Shall"
    SHALL_NOT = "ShallNot"
    SHOULD = "Should"
    SHOULD_NOT = "ShouldNot"
    MAY = "May"
    CAN = "Can"

    @property
    def rank(self) -> int:
        """Strictness: Shall = ShallNot > Should = ShouldNot > May > Can."""
        return _RANKS[self]


_RANKS = {
    Modality.SHALL: 4,
    Modality.SHALL_NOT: 4,
    Modality.SHOULD: 3,
    Modality.SHOULD_NOT: 3,
    Modality.MAY: 2,
    Modality.CAN: 1,
}

_MODAL_RULES: tuple[tuple[re.Pattern, Modality], ...] = (
    (re.compile(r"\bshall\s+not\b", re.IGNORECASE), Modality.SHALL_NOT),
    (re.compile(r"\bshall\b(?!\s+not\b)", re.IGNORECASE), Modality.SHALL),
    (re.compile(r"\bshould\s+not\b", re.IGNORECASE), Modality.SHOULD_NOT),
    (re.compile(r"\bshould\b(?!\s+not\b)", re.IGNORECASE), Modality.SHOULD),
    (re.compile(r"\bmay\b", re.IGNORECASE), Modality.MAY),
    (re.compile(r"\bcannot\b|\bcan\b", re.IGNORECASE), Modality.CAN),
)

_ANY_MODAL = re.compile(r"\b(?:shall|should|may|can)\b", re.IGNORECASE)


@dataclass(frozen=True)
class Requirement:
    iri: str
    text: str
    modality: Modality
    source_clause: str
    ordinal: int
    doc_id: str


@dataclass(frozen=True)
class RequirementCollection:
    iri: str
    source_clause: str
    heading: str
    members: tuple[str, ...]


def classify_modality(sentence: str) -> Modality | None:
    """Strongest modal present, negation-aware; None when no modal occurs."""
    best: tuple[int, int, Modality] | None = None
    for pattern, modality in _MODAL_RULES:
        m = pattern.search(sentence)
        if m is None:
            continue
        key = (modality.rank, -m.start(), modality)
        if best is None or key[:2] > best[:2]:
            best = key
    return best[2] if best else None


def first_modal_position(sentence: str) -> int | None:
    """Character offset of the first requirement-modal keyword, if any."""
    m = _ANY_MODAL.search(sentence)
    return m.start() if m else None


def modal_diagnostics(sentence: str) -> list[str]:
    """Non-fatal drafting warnings for a sentence unit."""
    notes = []
    if re.search(r"\bmust\b", sentence, re.IGNORECASE):
        notes.append("contains 'must', which is not extracted as a requirement keyword")
    if re.search(r"\bmay\s+not\b", sentence, re.IGNORECASE):
        notes.append("ambiguous 'may not' classified as May, not as a prohibition")
    if re.search(r"\bcannot\b|\bcan\s+not\b", sentence, re.IGNORECASE):
        notes.append("ambiguous 'cannot' classified as Can, not as a prohibition")
    return notes


# --------------------------------------------------------------------------
# Atomization

_AND_MODAL = re.compile(r",?\s+and\s+(?=(?:shall|should|may|can)\b)", re.IGNORECASE)
_SEMI_AND = re.compile(r";\s*and\s+", re.IGNORECASE)
_STARTS_WITH_MODAL = re.compile(r"(?:shall|should|may|can)\b", re.IGNORECASE)
_TRAILING_PUNCT = re.compile(r"[,;]\s*$")


def _depth_profile(text: str) -> list[int]:
    depth = 0
    profile = []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth = max(0, depth - 1)
        profile.append(depth)
    return profile


def _finish_atom(piece: str) -> str:
    piece = _TRAILING_PUNCT.sub("", piece.strip())
    if piece and piece[-1] not in ".?!":
        piece += "."
    return piece


def atomize_requirement(sentence_unit: str) -> list[str]:
    """Split one modal sentence unit into atomic requirement texts.

    Splits only across top-level "and <modal>" joints and "; and" joints
    whose conjunct carries its own modal. Conjuncts that open directly with
    a modal inherit the subject stem of the first conjunct so every atom is
    self-contained. Anything else stays a single atom.
    """
    depths = _depth_profile(sentence_unit)
    points: list[tuple[int, int]] = []  # (separator start, conjunct start)
    for pattern in (_AND_MODAL, _SEMI_AND):
        for m in pattern.finditer(sentence_unit):
            if depths[m.start()] == 0:
                points.append((m.start(), m.end()))
    points.sort()

    pieces: list[str] = []
    cursor = 0
    for sep_start, conj_start in points:
        if sep_start < cursor:
            continue
        conjunct_end = len(sentence_unit)
        conjunct = sentence_unit[conj_start:conjunct_end]
        if not _ANY_MODAL.search(conjunct):
            continue
        pieces.append(sentence_unit[cursor:sep_start])
        cursor = conj_start
    pieces.append(sentence_unit[cursor:])

    if len(pieces) == 1:
        return [sentence_unit.strip()]

    modal = _ANY_MODAL.search(pieces[0])
    stem = pieces[0][: modal.start()] if modal else ""
    atoms = [_finish_atom(pieces[0])]
    for piece in pieces[1:]:
        piece = piece.strip()
        if _STARTS_WITH_MODAL.match(piece):
            atoms.append(_finish_atom(f"{stem.strip()} {piece}"))
        else:
            atoms.append(_finish_atom(piece))
    return [a for a in atoms if a]


# --------------------------------------------------------------------------
# Document-level extraction

def extract_requirements(
    doc: DocumentSource,
    base_iri: str | None = None,
    diagnostics: list[str] | None = None,
) -> tuple[list[Requirement], list[RequirementCollection]]:
    """Extract atomic requirements and per-clause collections from a document.

    Only normative clauses are scanned; definitional and informative clauses
    never yield requirements. Every sentence unit with a modal yields at
    least one requirement. ``diagnostics``, when given, collects drafting
    warnings ('must', 'may not', 'cannot').
    """
    base = base_iri or doc.base_iri
    requirements: list[Requirement] = []
    collections: list[RequirementCollection] = []

    for clause in doc.iter_clauses():
        if clause.kind is not ClauseKind.NORMATIVE:
            continue
        clause_reqs: list[Requirement] = []
        ordinal = 0
        for unit in sentences_of(clause):
            if diagnostics is not None:
                for note in modal_diagnostics(unit):
                    diagnostics.append(f"{doc.doc_id}:{clause.clause_id}: {note}: {unit!r}")
            if classify_modality(unit) is None:
                continue
            for atom in atomize_requirement(unit):
                modality = classify_modality(atom)
                if modality is None:
                    continue
                ordinal += 1
                clause_reqs.append(
                    Requirement(
                        iri=mint_iri(
                            base, doc.doc_id, "requirement", f"{clause.clause_id}-{ordinal}"
                        ),
                        text=atom,
                        modality=modality,
                        source_clause=clause.clause_id,
                        ordinal=ordinal,
                        doc_id=doc.doc_id,
                    )
                )
        if clause_reqs:
            requirements.extend(clause_reqs)
            collections.append(
                RequirementCollection(
                    iri=mint_iri(base, doc.doc_id, "collection", clause.clause_id),
                    source_clause=clause.clause_id,
                    heading=clause.heading or f"Clause {clause.clause_id}",
                    members=tuple(r.iri for r in clause_reqs),
                )
            )
    return requirements, collections
