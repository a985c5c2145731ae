"""Static report emitter: navigable markdown and HTML pages per document.

Per-requirement pages list linked concepts and mapped standard requirements;
per-concept pages list the definition and every requirement mentioning the
concept. Output is deterministic; the timestamp line is optional.
"""

from __future__ import annotations

import html
from pathlib import Path

from .concepts import slugify
from .mapping import CoverageReport
from .pipeline import DocumentArtifacts

__all__ = ["emit_site"]


def _req_page_name(req_iri: str) -> str:
    return req_iri.rsplit("/", 1)[-1]


def _md_to_html_name(name: str) -> str:
    return name[:-3] + ".html" if name.endswith(".md") else name


class _Page:
    """Accumulates parallel markdown and HTML bodies."""

    def __init__(self, title: str):
        self.title = title
        self.md: list[str] = [f"# {title}", ""]
        self.html: list[str] = [f"<h1>{html.escape(title)}</h1>"]

    def heading(self, text: str):
        self.md += [f"## {text}", ""]
        self.html.append(f"<h2>{html.escape(text)}</h2>")

    def para(self, text: str):
        self.md += [text, ""]
        self.html.append(f"<p>{html.escape(text)}</p>")

    def field(self, label: str, value: str):
        self.md.append(f"- **{label}:** {value}")
        self.html.append(
            f"<p><strong>{html.escape(label)}:</strong> {html.escape(value)}</p>"
        )

    def blank(self):
        if self.md and self.md[-1] != "":
            self.md.append("")

    def items(self, rows: list[tuple[str, str | None]]):
        """Bullet list of (text, optional relative .md link target)."""
        self.html.append("<ul>")
        for text, target in rows:
            if target:
                self.md.append(f"- [{text}]({target})")
                self.html.append(
                    f'<li><a href="{_md_to_html_name(target)}">{html.escape(text)}</a></li>'
                )
            else:
                self.md.append(f"- {text}")
                self.html.append(f"<li>{html.escape(text)}</li>")
        self.html.append("</ul>")
        self.md.append("")

    def code_line(self, text: str):
        self.md += [f"`{text}`", ""]
        self.html.append(f"<p><code>{html.escape(text)}</code></p>")

    def write(self, directory: Path, stem: str, formats: tuple[str, ...]):
        directory.mkdir(parents=True, exist_ok=True)
        if "md" in formats:
            (directory / f"{stem}.md").write_text("\n".join(self.md) + "\n", encoding="utf-8")
        if "html" in formats:
            body = "\n".join(self.html)
            doc = (
                "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
                f"<title>{html.escape(self.title)}</title>\n</head>\n<body>\n"
                f"{body}\n</body>\n</html>\n"
            )
            (directory / f"{stem}.html").write_text(doc, encoding="utf-8")


def _document_pages(
    out: Path,
    artifacts: DocumentArtifacts,
    coverage: CoverageReport | None,
    formats: tuple[str, ...],
):
    doc = artifacts.doc
    base = out / doc.doc_id
    concept_by_iri = artifacts.scheme.by_iri()
    matches_by_req: dict[str, list] = {}
    reqs_by_concept: dict[str, list[str]] = {}
    for m in artifacts.matches:
        matches_by_req.setdefault(m.requirement_iri, []).append(m)
        reqs_by_concept.setdefault(m.concept_iri, []).append(m.requirement_iri)
    assertions_by_source = (
        {a.source_req: a for a in coverage.assertions} if coverage else {}
    )
    req_by_iri = {r.iri: r for r in artifacts.requirements}

    # Document index
    index = _Page(f"{doc.title} ({doc.doc_id})")
    index.field("Type", doc.doc_type.value)
    index.field("Base IRI", doc.base_iri)
    index.field("Concepts", str(len(artifacts.scheme.concepts)))
    index.field("Requirements", str(len(artifacts.requirements)))
    index.field("Collections", str(len(artifacts.collections)))
    index.field("Lexical entries", str(len(artifacts.lexical_entries)))
    index.blank()

    index.heading("Requirement collections")
    for coll in artifacts.collections:
        index.para(f"**{coll.heading}** (clause {coll.source_clause})")
        index.items(
            [
                (req_by_iri[m].text, f"requirements/{_req_page_name(m)}.md")
                for m in coll.members
            ]
        )

    index.heading("Concepts")
    index.items(
        sorted(
            (c.pref_label, f"concepts/{slugify(c.pref_label)}.md")
            for c in artifacts.scheme.concepts
        )
    )

    if artifacts.lexical_entries:
        index.heading("Lexical entries")
        for entry in artifacts.lexical_entries:
            index.para(f"**{entry.surface_form}** occurs in:")
            index.items(
                [
                    (occ, f"requirements/{_req_page_name(occ)}.md")
                    for occ in entry.occurrences
                ]
            )
            if entry.alignment_candidates:
                index.items(
                    [
                        (f"alignment candidate ({doc_id}): {iri}", None)
                        for doc_id, iri in entry.alignment_candidates
                    ]
                )

    if coverage is not None:
        index.heading("Coverage summary")
        index.para(
            " ".join(f"{k}={coverage.counts[k]}" for k in ("full", "partial", "unmapped"))
        )
        if coverage.unresolved_terms:
            index.para("Unresolved terms:")
            index.items([(iri, None) for iri in coverage.unresolved_terms])
    index.write(base, "index", formats)

    # Requirement pages
    for req in artifacts.requirements:
        page = _Page(f"Requirement {doc.doc_id}:{req.source_clause}-{req.ordinal}")
        page.code_line(req.iri)
        page.para(req.text)
        page.field("Modality", req.modality.value)
        page.field("Source clause", req.source_clause)
        page.blank()
        page.heading("Linked concepts")
        rows = []
        for m in sorted(matches_by_req.get(req.iri, []), key=lambda m: m.start):
            concept = concept_by_iri[m.concept_iri]
            rows.append(
                (
                    f"{concept.pref_label} ({m.role.value})",
                    f"../concepts/{slugify(concept.pref_label)}.md",
                )
            )
        if rows:
            page.items(rows)
        else:
            page.para("none")
        assertion = assertions_by_source.get(req.iri)
        if assertion is not None:
            page.heading("Mapping to standard requirements")
            page.field("Kind", assertion.kind.value)
            if assertion.strictness_delta is not None:
                page.field("Strictness delta", assertion.strictness_delta.value)
            if assertion.partial_reasons:
                page.field(
                    "Reasons", ", ".join(sorted(r.value for r in assertion.partial_reasons))
                )
            if assertion.note:
                page.field("Note", assertion.note)
            page.blank()
            if assertion.target_reqs:
                page.items([(t, None) for t in assertion.target_reqs])
            else:
                page.para("no mapped standard requirement")
        page.write(base / "requirements", _req_page_name(req.iri), formats)

    # Concept pages
    for concept in artifacts.scheme.concepts:
        page = _Page(f"Concept: {concept.pref_label}")
        page.code_line(concept.iri)
        if concept.definition:
            page.para(concept.definition)
        page.field("Category", concept.category.value)
        page.field("Source clause", concept.source_clause)
        page.blank()
        for relation in ("broader", "narrower", "related"):
            targets = getattr(concept, relation)
            if targets:
                page.heading(relation)
                page.items(
                    [
                        (
                            concept_by_iri[t].pref_label,
                            f"{slugify(concept_by_iri[t].pref_label)}.md",
                        )
                        for t in targets
                    ]
                )
        page.heading("Requirements mentioning this concept")
        mentions = sorted(set(reqs_by_concept.get(concept.iri, [])))
        if mentions:
            page.items(
                [
                    (req_by_iri[iri].text, f"../requirements/{_req_page_name(iri)}.md")
                    for iri in mentions
                ]
            )
        else:
            page.para("none")
        page.write(base / "concepts", slugify(concept.pref_label), formats)


def emit_site(
    out_dir: str | Path,
    bundles: list[DocumentArtifacts],
    coverage: CoverageReport | None = None,
    formats: tuple[str, ...] = ("md", "html"),
    generated_at: str | None = None,
) -> Path:
    """Write the static report tree under ``out_dir/report``; returns its path."""
    out = Path(out_dir) / "report"
    top = _Page("Extraction report")
    if generated_at is not None:
        top.para(f"Generated: {generated_at}")
    top.items(
        [
            (f"{b.doc.title} ({b.doc.doc_id})", f"{b.doc.doc_id}/index.md")
            for b in bundles
        ]
    )
    top.write(out, "index", formats)
    for i, bundle in enumerate(bundles):
        # Coverage attaches to the first (regulation) document only.
        _document_pages(out, bundle, coverage if i == 0 else None, formats)
    return out
