"""Command-line front-end chaining the extraction pipeline.

Commands: extract, link, graph, map, lint, report, query. Exit codes:
0 success, 1 input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import kg, vocab
from .errors import ConfigError, InputError, InvariantError
from .mapping import (
    apply_curation,
    coverage_report,
    propose_alignments,
    render_coverage_json,
    render_coverage_text,
)
from .pipeline import DocumentArtifacts, align_artifacts, load_artifacts
from .pitfalls import ScanConfig, render_pitfall_json, render_pitfall_text, scan
from .rdf import parse_ntriples, serialize_ntriples, serialize_turtle
from .report import emit_site

__all__ = ["build_parser", "main"]


def _add_common(parser: argparse.ArgumentParser, inputs: str = "+"):
    parser.add_argument("--input", nargs=inputs, required=True, help="annotated-clause file(s)")
    parser.add_argument("--base-iri", default=None, help="override base IRI for minting")
    parser.add_argument(
        "--categories",
        nargs="*",
        default=[],
        help="category map file(s), paired with --input order ('-' for none)",
    )
    parser.add_argument(
        "--lexicon",
        nargs="*",
        default=[],
        help="lexicon file(s), paired with --input order ('-' for none)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tairkit",
        description="Extract concepts and requirements from clause-structured "
        "normative texts into TAIR knowledge graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="print extraction counts and listings")
    _add_common(p)
    p.add_argument("--out", default=None, help="directory for listing files")

    p = sub.add_parser("link", help="print concept-requirement links")
    _add_common(p)

    p = sub.add_parser("graph", help="write canonical .ttl/.nt graph files")
    _add_common(p)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["ttl", "nt", "both"], default="both")

    p = sub.add_parser("map", help="assess regulation-to-standard coverage")
    _add_common(p)
    p.add_argument("--curation", default=None, help="curated mapping decisions file")
    p.add_argument("--threshold", type=float, default=0.25)
    p.add_argument("--out", default=None)
    p.add_argument("--no-timestamp", action="store_true")

    p = sub.add_parser("lint", help="scan a graph for ontology pitfalls")
    p.add_argument("--input", nargs="+", required=True, help="document text or .nt file(s)")
    p.add_argument("--base-iri", default=None)
    p.add_argument("--categories", nargs="*", default=[])
    p.add_argument("--lexicon", nargs="*", default=[])
    p.add_argument("--manifest", default=None, help="vocabulary manifest with inverse= lines")
    p.add_argument("--out", default=None)

    p = sub.add_parser("report", help="emit static markdown/HTML report pages")
    _add_common(p)
    p.add_argument("--curation", default=None)
    p.add_argument("--threshold", type=float, default=0.25)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["md", "html", "both"], default="both")
    p.add_argument("--no-timestamp", action="store_true")

    p = sub.add_parser("query", help="look up a concept, requirement, or collection")
    _add_common(p, inputs=1 if False else "+")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--concept", help="concept slug, label, or IRI")
    group.add_argument("--requirement", help="requirement IRI or <clause>-<ordinal>")
    group.add_argument("--collection", help="collection IRI or clause id")

    return parser


def _paired(paths: list[str], count: int) -> list[str | None]:
    out: list[str | None] = []
    for i in range(count):
        value = paths[i] if i < len(paths) else None
        out.append(None if value in (None, "-", "") else value)
    return out


def _load_bundles(args) -> list[DocumentArtifacts]:
    inputs = list(args.input)
    categories = _paired(args.categories, len(inputs))
    lexicons = _paired(args.lexicon, len(inputs))
    bundles = []
    for path, cat, lex in zip(inputs, categories, lexicons):
        bundles.append(
            load_artifacts(path, categories_path=cat, lexicon_path=lex, base_iri=args.base_iri)
        )
    if len(bundles) > 1:
        bundles = [
            align_artifacts(b, [o for o in bundles if o is not b]) for b in bundles
        ]
    return bundles


def _print_diagnostics(bundles):
    for bundle in bundles:
        for note in bundle.diagnostics:
            print(f"warning: {note}", file=sys.stderr)


def _timestamp(disabled: bool) -> str | None:
    if disabled:
        return None
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# --------------------------------------------------------------------------
# Commands

def _cmd_extract(args) -> int:
    bundles = _load_bundles(args)
    _print_diagnostics(bundles)
    for b in bundles:
        print(
            f"{b.doc.doc_id}: concepts={len(b.scheme.concepts)} "
            f"requirements={len(b.requirements)} collections={len(b.collections)} "
            f"lexical_entries={len(b.lexical_entries)}"
        )
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            req_lines = [
                f"{r.iri}\t{r.modality.value}\t{r.text}" for r in b.requirements
            ]
            (out / f"{b.doc.doc_id}.requirements.txt").write_text(
                "\n".join(req_lines) + ("\n" if req_lines else ""), encoding="utf-8"
            )
            con_lines = [
                f"{c.iri}\t{c.category.value}\t{c.pref_label}" for c in b.scheme.concepts
            ]
            (out / f"{b.doc.doc_id}.concepts.txt").write_text(
                "\n".join(con_lines) + ("\n" if con_lines else ""), encoding="utf-8"
            )
    return 0


def _cmd_link(args) -> int:
    bundles = _load_bundles(args)
    _print_diagnostics(bundles)
    for b in bundles:
        for m in b.matches:
            print(f"{m.requirement_iri}\t{m.role.value}\t{m.concept_iri}")
        for entry in b.lexical_entries:
            occs = ",".join(entry.occurrences)
            print(f"{entry.iri}\tlexical-entry\t{occs}")
    return 0


def _cmd_graph(args) -> int:
    bundles = _load_bundles(args)
    _print_diagnostics(bundles)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for b in bundles:
        if args.format in ("ttl", "both"):
            (out / f"{b.doc.doc_id}.ttl").write_text(
                serialize_turtle(b.graph), encoding="utf-8"
            )
        if args.format in ("nt", "both"):
            (out / f"{b.doc.doc_id}.nt").write_text(
                serialize_ntriples(b.graph), encoding="utf-8"
            )
        print(f"{b.doc.doc_id}: {len(b.graph)} triples written to {out}")
    return 0


def _coverage_for(args, bundles):
    if len(bundles) != 2:
        raise ConfigError("coverage needs exactly two --input documents (regulation, standard)")
    reg, std = bundles[0], bundles[1]
    proposals = propose_alignments(reg.graph, std.graph, threshold=args.threshold)
    curation_text = (
        Path(args.curation).read_text(encoding="utf-8") if args.curation else ""
    )
    assertions = apply_curation(proposals, curation_text, reg.graph, std.graph)
    report = coverage_report(
        assertions,
        reg.graph,
        std.graph,
        generated_at=_timestamp(getattr(args, "no_timestamp", False)),
    )
    return proposals, report


def _cmd_map(args) -> int:
    bundles = _load_bundles(args)
    _print_diagnostics(bundles)
    proposals, report = _coverage_for(args, bundles)
    print(
        "coverage: "
        + " ".join(f"{k}={report.counts[k]}" for k in ("full", "partial", "unmapped"))
    )
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "coverage.json").write_text(render_coverage_json(report), encoding="utf-8")
        (out / "coverage.txt").write_text(render_coverage_text(report), encoding="utf-8")
        prop_lines = [f"{s}\t{t}\t{score:.6f}" for s, t, score in proposals]
        (out / "proposals.txt").write_text(
            "\n".join(prop_lines) + ("\n" if prop_lines else ""), encoding="utf-8"
        )
    return 0


def _cmd_lint(args) -> int:
    inverses = None
    if args.manifest:
        inverses = vocab.load_manifest(Path(args.manifest).read_text(encoding="utf-8"))
    status = 0
    for path in args.input:
        p = Path(path)
        if p.suffix == ".nt":
            graph = parse_ntriples(p.read_text(encoding="utf-8"), dict(vocab.STANDARD_PREFIXES))
            graph_id = p.stem
        else:
            bundle = load_artifacts(
                p,
                categories_path=_paired(args.categories, 1)[0],
                lexicon_path=_paired(args.lexicon, 1)[0],
                base_iri=args.base_iri,
            )
            graph = bundle.graph
            graph_id = bundle.doc.doc_id
        report = scan(graph, ScanConfig(inverses=inverses, graph_id=graph_id))
        sys.stdout.write(render_pitfall_text(report))
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{graph_id}.pitfalls.txt").write_text(
                render_pitfall_text(report), encoding="utf-8"
            )
            (out / f"{graph_id}.pitfalls.json").write_text(
                render_pitfall_json(report), encoding="utf-8"
            )
    return status


def _cmd_report(args) -> int:
    bundles = _load_bundles(args)
    _print_diagnostics(bundles)
    coverage = None
    if len(bundles) == 2:
        _, coverage = _coverage_for(args, bundles)
    formats = ("md", "html") if args.format == "both" else (args.format,)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for b in bundles:
        (out / f"{b.doc.doc_id}.ttl").write_text(serialize_turtle(b.graph), encoding="utf-8")
        (out / f"{b.doc.doc_id}.nt").write_text(serialize_ntriples(b.graph), encoding="utf-8")
    site = emit_site(
        out,
        bundles,
        coverage=coverage,
        formats=formats,
        generated_at=_timestamp(args.no_timestamp),
    )
    if coverage is not None:
        (out / "coverage.json").write_text(render_coverage_json(coverage), encoding="utf-8")
    print(f"report written to {site}")
    return 0


def _resolve_concept(bundle: DocumentArtifacts, key: str):
    for c in bundle.scheme.concepts:
        if key in (c.iri, c.pref_label.lower()) or key == c.iri.rsplit("/", 1)[-1]:
            return c
    label = bundle.scheme.find_label(key)
    if label is not None:
        return label
    raise InputError(f"no concept matching '{key}' in {bundle.doc.doc_id}")


def _cmd_query(args) -> int:
    bundles = _load_bundles(args)
    for bundle in bundles:
        graph = bundle.graph
        if args.concept:
            try:
                concept = _resolve_concept(bundle, args.concept.lower())
            except InputError:
                if len(bundles) > 1 and bundle is not bundles[-1]:
                    continue
                raise
            print(f"concept: {concept.pref_label}")
            print(f"iri: {concept.iri}")
            print(f"category: {concept.category.value}")
            print(f"definition: {concept.definition}")
            for iri in kg.query_requirements_using(graph, concept.iri):
                print(f"used by: {iri}")
            return 0
        if args.requirement:
            key = args.requirement
            if not key.startswith("http"):
                key = f"{bundle.doc.base_iri.rstrip('/')}/{bundle.doc.doc_id}/requirement/{key}"
            views = kg.requirements_in(graph)
            if key not in views:
                if bundle is not bundles[-1]:
                    continue
                raise InputError(f"no requirement '{args.requirement}'")
            view = views[key]
            print(f"requirement: {key}")
            print(f"modality: {view.modality.value if view.modality else 'unknown'}")
            print(f"clause: {view.source_clause}")
            print(f"text: {view.text}")
            for role, concept_iri in kg.query_concepts_of(graph, key):
                print(f"{role}: {concept_iri}")
            return 0
        if args.collection:
            key = args.collection
            if not key.startswith("http"):
                key = f"{bundle.doc.base_iri.rstrip('/')}/{bundle.doc.doc_id}/collection/{key}"
            if not any(c.iri == key for c in bundle.collections):
                if bundle is not bundles[-1]:
                    continue
                raise InputError(f"no collection '{args.collection}'")
            print(f"collection: {key}")
            for member in kg.query_collection(graph, key):
                print(f"decomposes: {member}")
            return 0
    return 0


_COMMANDS = {
    "extract": _cmd_extract,
    "link": _cmd_link,
    "graph": _cmd_graph,
    "map": _cmd_map,
    "lint": _cmd_lint,
    "report": _cmd_report,
    "query": _cmd_query,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
