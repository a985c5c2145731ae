"""Cross-document coverage assessment between a regulation and a standard.

Automated proposals rank candidate requirement pairs by a blend of token
and linked-concept overlap; a curation file makes the actual accept/reject
decisions. Strictness deltas are computed from modalities, and the final
coverage report partitions every regulation requirement into full, partial,
or unmapped.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from . import kg, vocab
from .errors import CurationError, InputError
from .linking import canonical_phrase, tokenize
from .rdf import Graph, Iri
from .requirements import Modality

__all__ = [
    "CoverageReport",
    "MappingAssertion",
    "MappingKind",
    "PartialReason",
    "StrictnessDelta",
    "apply_curation",
    "coverage_report",
    "propose_alignments",
    "render_coverage_json",
    "render_coverage_text",
    "strictness_delta",
]


class MappingKind(str, Enum):
    FULL = "full"
    PARTIAL = "partial"
    UNMAPPED = "unmapped"


class PartialReason(str, Enum):
    STRICTNESS_WEAKER = "strictnessWeaker"
    CONCEPT_DEFINITION_DIFFERS = "conceptDefinitionDiffers"
    INCOMPLETE_COVERAGE = "incompleteCoverage"


class StrictnessDelta(str, Enum):
    EQUAL = "equal"
    TARGET_WEAKER = "targetWeaker"
    TARGET_STRONGER = "targetStronger"


@dataclass(frozen=True)
class MappingAssertion:
    source_req: str
    target_reqs: tuple[str, ...]
    kind: MappingKind
    partial_reasons: frozenset[PartialReason] = frozenset()
    strictness_delta: StrictnessDelta | None = None
    note: str = ""


@dataclass(frozen=True)
class CoverageReport:
    counts: Mapping[str, int]
    assertions: tuple[MappingAssertion, ...]
    unresolved_terms: tuple[str, ...]
    generated_at: str | None = None


# Function words plus the modal keywords; modals must not drive similarity.
STOP_WORDS = frozenset(
    """a an the and or but if then else when where while of to in on at by for
    with about against between into through during before after above below
    from up down out over under again further once here there all any both
    each few more most other some such no nor only own same so than too very
    is are was were be been being have has had having do does did doing it its
    itself they them their this that these those as which who whom whose not
    shall should may can must will would might could""".split()
)


def _content_tokens(text: str) -> frozenset[str]:
    return frozenset(t for t in tokenize(text) if t not in STOP_WORDS)


def _jaccard(a: frozenset, b: frozenset) -> float:
    if not a and not b:
        return 1.0
    union = a | b
    return len(a & b) / len(union)


def _linked_label_sets(g: Graph) -> dict[str, frozenset[str]]:
    concepts = kg.concepts_in(g)
    out: dict[str, set[str]] = {iri: set() for iri in kg.requirements_in(g)}
    for predicate in vocab.LINK_ROLE_PREDICATES.values():
        for t in g:
            if t.p == predicate and isinstance(t.o, Iri):
                concept = concepts.get(t.o.value)
                if concept is not None and t.s.value in out:
                    out[t.s.value].add(canonical_phrase(concept.pref_label))
    return {iri: frozenset(labels) for iri, labels in out.items()}


def propose_alignments(
    reg_graph: Graph, std_graph: Graph, threshold: float = 0.25
) -> list[tuple[str, str, float]]:
    """Scored (regulation req, standard req, score) pairs above the threshold.

    score = 0.5 * Jaccard(content tokens) + 0.5 * Jaccard(linked concept
    labels, compared by normalized form). Sorted by descending score with
    IRI tiebreaks.
    """
    reg_reqs = kg.requirements_in(reg_graph)
    std_reqs = kg.requirements_in(std_graph)
    reg_labels = _linked_label_sets(reg_graph)
    std_labels = _linked_label_sets(std_graph)
    reg_tokens = {iri: _content_tokens(v.text) for iri, v in reg_reqs.items()}
    std_tokens = {iri: _content_tokens(v.text) for iri, v in std_reqs.items()}

    proposals = []
    for src in sorted(reg_reqs):
        for tgt in sorted(std_reqs):
            j_tokens = _jaccard(reg_tokens[src], std_tokens[tgt])
            src_labels = reg_labels.get(src, frozenset())
            tgt_labels = std_labels.get(tgt, frozenset())
            if not src_labels and not tgt_labels:
                # no concept links on either side: token overlap is the
                # whole signal, so identical texts still score 1.0 and
                # disjoint texts 0.0
                score = j_tokens
            else:
                score = 0.5 * j_tokens + 0.5 * _jaccard(src_labels, tgt_labels)
            if score >= threshold:
                proposals.append((src, tgt, score))
    proposals.sort(key=lambda p: (-p[2], p[0], p[1]))
    return proposals


def strictness_delta(a: Modality, b: Modality) -> StrictnessDelta:
    """Compare target modality b against source modality a on the strictness order."""
    if b.rank < a.rank:
        return StrictnessDelta.TARGET_WEAKER
    if b.rank > a.rank:
        return StrictnessDelta.TARGET_STRONGER
    return StrictnessDelta.EQUAL


# --------------------------------------------------------------------------
# Curation

_SPLIT_OUTSIDE_QUOTES = re.compile(r';(?=(?:[^"]*"[^"]*")*[^"]*$)')


@dataclass
class _CurationRow:
    source: str
    target: str
    kind: MappingKind
    reasons: set[PartialReason] = field(default_factory=set)
    note: str = ""
    line: int = 0


def _parse_curation(text: str) -> tuple[list[_CurationRow], set[tuple[str, str]]]:
    rows: list[_CurationRow] = []
    rejects: set[tuple[str, str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in _SPLIT_OUTSIDE_QUOTES.split(line)]
        if len(fields) < 3:
            raise CurationError(
                f"curation line {lineno}: expected 'source ; target ; kind [; ...]'"
            )
        source, target, kind_text = fields[0], fields[1], fields[2]
        if not source or not target:
            raise CurationError(f"curation line {lineno}: empty IRI field")
        if kind_text == "reject":
            rejects.add((source, target))
            continue
        if kind_text not in (MappingKind.FULL.value, MappingKind.PARTIAL.value):
            raise CurationError(
                f"curation line {lineno}: kind must be full, partial, or reject"
            )
        row = _CurationRow(source, target, MappingKind(kind_text), line=lineno)
        for extra in fields[3:]:
            if extra.startswith("reasons="):
                for reason in extra[len("reasons="):].split(","):
                    reason = reason.strip()
                    if not reason:
                        continue
                    try:
                        row.reasons.add(PartialReason(reason))
                    except ValueError:
                        raise CurationError(
                            f"curation line {lineno}: unknown reason '{reason}'"
                        ) from None
            elif extra.startswith("note="):
                row.note = extra[len("note="):].strip().strip('"')
            elif extra:
                raise CurationError(f"curation line {lineno}: unknown field '{extra}'")
        rows.append(row)
    return rows, rejects


def apply_curation(
    proposals: Iterable[tuple[str, str, float]],
    curation_text: str,
    reg_graph: Graph,
    std_graph: Graph,
) -> list[MappingAssertion]:
    """Turn curated decisions into a complete assertion set.

    Accepted rows become full/partial assertions (strictness deltas computed
    from modalities; a weaker target forces kind=partial with the
    strictnessWeaker reason). Every regulation requirement not covered by an
    accepted row becomes an unmapped assertion. Reject rows suppress
    proposals and may not contradict accepted rows.
    """
    del proposals  # proposals inform the curator; assertions come from curation
    reg_reqs = kg.requirements_in(reg_graph)
    std_reqs = kg.requirements_in(std_graph)
    rows, rejects = _parse_curation(curation_text)

    seen_pairs: set[tuple[str, str]] = set()
    by_source: dict[str, list[_CurationRow]] = {}
    for row in rows:
        if row.source not in reg_reqs:
            raise CurationError(
                f"curation line {row.line}: unknown regulation requirement {row.source}"
            )
        if row.target not in std_reqs:
            raise CurationError(
                f"curation line {row.line}: unknown standard requirement {row.target}"
            )
        pair = (row.source, row.target)
        if pair in seen_pairs:
            raise CurationError(f"curation line {row.line}: duplicate row for {pair}")
        if pair in rejects:
            raise CurationError(
                f"curation line {row.line}: pair {pair} is both accepted and rejected"
            )
        seen_pairs.add(pair)
        by_source.setdefault(row.source, []).append(row)

    for source, target in rejects:
        if source not in reg_reqs or target not in std_reqs:
            raise CurationError(f"reject row references unknown IRI: {source} ; {target}")

    assertions: list[MappingAssertion] = []
    for source in sorted(reg_reqs):
        source_rows = by_source.get(source)
        if not source_rows:
            assertions.append(
                MappingAssertion(source_req=source, target_reqs=(), kind=MappingKind.UNMAPPED)
            )
            continue
        kinds = {row.kind for row in source_rows}
        if len(kinds) > 1:
            raise CurationError(
                f"contradictory kinds for {source}: {sorted(k.value for k in kinds)}"
            )
        kind = kinds.pop()
        targets = tuple(sorted(row.target for row in source_rows))
        reasons = {reason for row in source_rows for reason in row.reasons}
        note = "; ".join(row.note for row in source_rows if row.note)

        delta: StrictnessDelta | None = None
        src_modality = reg_reqs[source].modality
        target_modalities = [
            std_reqs[t].modality for t in targets if std_reqs[t].modality is not None
        ]
        if src_modality is not None and target_modalities:
            strongest = max(target_modalities, key=lambda m: m.rank)
            delta = strictness_delta(src_modality, strongest)
        if delta is StrictnessDelta.TARGET_WEAKER:
            kind = MappingKind.PARTIAL
            reasons.add(PartialReason.STRICTNESS_WEAKER)
        if kind is MappingKind.PARTIAL and not reasons:
            raise CurationError(f"partial mapping for {source} requires reasons=")

        assertions.append(
            MappingAssertion(
                source_req=source,
                target_reqs=targets,
                kind=kind,
                partial_reasons=frozenset(reasons),
                strictness_delta=delta,
                note=note,
            )
        )
    return assertions


# --------------------------------------------------------------------------
# Coverage report

def coverage_report(
    assertions: Iterable[MappingAssertion],
    reg_graph: Graph,
    std_graph: Graph,
    generated_at: str | None = None,
) -> CoverageReport:
    """Tally assertion kinds and collect unresolved regulation terms.

    A regulation lexical entry is unresolved when it occurs in a requirement
    whose assertion is unmapped or partial and its normalized form matches no
    concept label of the standard.
    """
    assertions = tuple(assertions)
    reg_reqs = set(kg.requirements_in(reg_graph))
    sources = [a.source_req for a in assertions]
    if len(sources) != len(set(sources)) or set(sources) != reg_reqs:
        raise InputError(
            "assertions do not partition the regulation requirements "
            f"({len(sources)} assertions for {len(reg_reqs)} requirements)"
        )
    for a in assertions:
        if (a.kind is MappingKind.UNMAPPED) != (not a.target_reqs):
            raise InputError(f"assertion for {a.source_req}: unmapped iff no targets")

    counts = {kind.value: 0 for kind in MappingKind}
    shaky: set[str] = set()
    for a in assertions:
        counts[a.kind.value] += 1
        if a.kind in (MappingKind.UNMAPPED, MappingKind.PARTIAL):
            shaky.add(a.source_req)

    std_labels = {
        canonical_phrase(label)
        for view in kg.concepts_in(std_graph).values()
        for label in (view.pref_label, *view.alt_labels)
    }
    unresolved = []
    for iri, entry in sorted(kg.lexical_entries_in(reg_graph).items()):
        if not shaky.intersection(entry.occurrences):
            continue
        if entry.normalized_form not in std_labels:
            unresolved.append(iri)

    return CoverageReport(
        counts=counts,
        assertions=assertions,
        unresolved_terms=tuple(unresolved),
        generated_at=generated_at,
    )


def render_coverage_json(report: CoverageReport) -> str:
    """Stable-field-order structured rendering of a coverage report."""
    payload = {
        "counts": dict(sorted(report.counts.items())),
        "assertions": [
            {
                "source": a.source_req,
                "targets": list(a.target_reqs),
                "kind": a.kind.value,
                "reasons": sorted(r.value for r in a.partial_reasons),
                "strictness_delta": a.strictness_delta.value if a.strictness_delta else None,
                "note": a.note,
            }
            for a in report.assertions
        ],
        "unresolved_terms": list(report.unresolved_terms),
    }
    if report.generated_at is not None:
        payload["generated_at"] = report.generated_at
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_coverage_text(report: CoverageReport) -> str:
    lines = ["Coverage report", "==============="]
    lines.append(
        "counts: "
        + " ".join(f"{k}={report.counts[k]}" for k in ("full", "partial", "unmapped"))
    )
    lines.append("")
    for a in report.assertions:
        lines.append(f"{a.kind.value:8s} {a.source_req}")
        for target in a.target_reqs:
            lines.append(f"         -> {target}")
        if a.partial_reasons:
            lines.append(
                "         reasons: " + ", ".join(sorted(r.value for r in a.partial_reasons))
            )
        if a.strictness_delta is not None:
            lines.append(f"         strictness: {a.strictness_delta.value}")
        if a.note:
            lines.append(f"         note: {a.note}")
    if report.unresolved_terms:
        lines.append("")
        lines.append("unresolved terms:")
        lines.extend(f"  {iri}" for iri in report.unresolved_terms)
    if report.generated_at is not None:
        lines.append("")
        lines.append(f"generated at: {report.generated_at}")
    return "\n".join(lines) + "\n"
