"""Ontology pitfall linting for TAIR graphs.

Implements three scans: missing inverse declarations (P-INV), missing
human-readable annotations (P-ANN), and unconnected elements (P-UNC). All
three carry severity minor. Scans are read-only and deterministic; the
catalog is config-extensible by code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from . import vocab
from .errors import ConfigError
from .rdf import Graph, Iri

__all__ = [
    "Method",
    "Pitfall",
    "PitfallReport",
    "ScanConfig",
    "Severity",
    "render_pitfall_json",
    "render_pitfall_text",
    "scan",
    "scan_missing_annotations",
    "scan_missing_inverses",
    "scan_unconnected",
]


class Severity(str, Enum):
    MINOR = "minor"
    IMPORTANT = "important"
    CRITICAL = "critical"


class Method(str, Enum):
    STRUCTURAL = "structural"
    LEXICAL = "lexical"
    CHARACTERISTIC = "characteristic"


@dataclass(frozen=True)
class Pitfall:
    code: str
    severity: Severity
    affected: tuple[str, ...]
    method: Method
    message: str


@dataclass(frozen=True)
class PitfallReport:
    graph_id: str
    pitfalls: tuple[Pitfall, ...]
    summary: Mapping[str, int]
    notes: tuple[str, ...] = ()


ALL_CODES = ("P-ANN", "P-INV", "P-UNC")


@dataclass
class ScanConfig:
    enabled: tuple[str, ...] = ALL_CODES
    inverses: Mapping[Iri, Iri] | None = None
    graph_id: str = "graph"
    extra_scans: dict = field(default_factory=dict)  # code -> callable(Graph) -> list[Pitfall]


def _is_external(iri: Iri) -> bool:
    return iri.value.startswith(vocab.EXTERNAL_NAMESPACES)


def _typed_subjects(g: Graph) -> list[Iri]:
    return sorted(
        {t.s for t in g if t.p == vocab.RDF_TYPE}, key=lambda i: i.value
    )


def scan_missing_inverses(
    g: Graph, declared_inverses: Mapping[Iri, Iri]
) -> list[Pitfall]:
    """P-INV: tair/skos object properties used without a declared inverse."""
    used = {
        t.p
        for t in g
        if isinstance(t.o, Iri)
        and t.p != vocab.RDF_TYPE
        and t.p.value.startswith((vocab.TAIR, vocab.SKOS))
    }
    return [
        Pitfall(
            code="P-INV",
            severity=Severity.MINOR,
            affected=(prop.value,),
            method=Method.STRUCTURAL,
            message=f"object property {prop.value} has no declared inverse",
        )
        for prop in sorted(used, key=lambda i: i.value)
        if prop not in declared_inverses
    ]


def _annotation_gaps(g: Graph) -> tuple[list[Iri], list[Iri]]:
    """(local subjects lacking label+description, external ones)."""
    local, external = [], []
    for subject in _typed_subjects(g):
        preds = {p for p, _ in g.predicates_objects(subject)}
        if preds & vocab.LABEL_PREDICATES or preds & vocab.DESCRIPTION_PREDICATES:
            continue
        (external if _is_external(subject) else local).append(subject)
    return local, external


def scan_missing_annotations(g: Graph) -> list[Pitfall]:
    """P-ANN: locally minted typed subjects with no label and no description."""
    local, _ = _annotation_gaps(g)
    return [
        Pitfall(
            code="P-ANN",
            severity=Severity.MINOR,
            affected=(subject.value,),
            method=Method.LEXICAL,
            message=f"element {subject.value} lacks a human-readable label or description",
        )
        for subject in local
    ]


def scan_unconnected(g: Graph) -> list[Pitfall]:
    """P-UNC: typed subjects with no object-property edge in or out.

    Any triple with an IRI object and a predicate other than rdf:type counts
    as connecting both of its ends.
    """
    connected: set[Iri] = set()
    for t in g:
        if isinstance(t.o, Iri) and t.p != vocab.RDF_TYPE:
            connected.add(t.s)
            connected.add(t.o)
    return [
        Pitfall(
            code="P-UNC",
            severity=Severity.MINOR,
            affected=(subject.value,),
            method=Method.STRUCTURAL,
            message=f"element {subject.value} is not connected to any other element",
        )
        for subject in _typed_subjects(g)
        if subject not in connected
    ]


def scan(g: Graph, config: ScanConfig | None = None) -> PitfallReport:
    """Run the enabled scans and aggregate a deterministic report."""
    config = config or ScanConfig()
    known = set(ALL_CODES) | set(config.extra_scans)
    unknown = [code for code in config.enabled if code not in known]
    if unknown:
        raise ConfigError(f"unknown pitfall codes in config: {sorted(unknown)}")

    inverses = config.inverses if config.inverses is not None else vocab.default_inverses()
    pitfalls: list[Pitfall] = []
    for code in sorted(config.enabled):
        if code == "P-ANN":
            found = scan_missing_annotations(g)
        elif code == "P-INV":
            found = scan_missing_inverses(g, inverses)
        elif code == "P-UNC":
            found = scan_unconnected(g)
        else:
            found = list(config.extra_scans[code](g))
        pitfalls.extend(sorted(found, key=lambda p: (p.code, p.affected)))

    _, external = _annotation_gaps(g)
    notes = tuple(
        f"external element {subject.value} is not annotated locally; "
        "its definition lives at its own namespace"
        for subject in external
    )
    summary = {severity.value: 0 for severity in Severity}
    for p in pitfalls:
        summary[p.severity.value] += 1
    return PitfallReport(
        graph_id=config.graph_id,
        pitfalls=tuple(pitfalls),
        summary=summary,
        notes=notes,
    )


def render_pitfall_text(report: PitfallReport) -> str:
    lines = [f"Pitfall report for {report.graph_id}", "=" * (20 + len(report.graph_id))]
    if not report.pitfalls:
        lines.append("no pitfalls detected")
    for p in report.pitfalls:
        lines.append(f"{p.code} [{p.severity.value}/{p.method.value}] {p.message}")
    lines.append("")
    lines.append(
        "summary: " + " ".join(f"{k}={report.summary[k]}" for k in sorted(report.summary))
    )
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def render_pitfall_json(report: PitfallReport) -> str:
    payload = {
        "graph_id": report.graph_id,
        "pitfalls": [
            {
                "code": p.code,
                "severity": p.severity.value,
                "method": p.method.value,
                "affected": list(p.affected),
                "message": p.message,
            }
            for p in report.pitfalls
        ],
        "summary": dict(sorted(report.summary.items())),
        "notes": list(report.notes),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
