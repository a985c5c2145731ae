from __future__ import annotations

import random

import pytest

from tairkit import vocab
from tairkit.errors import ConfigError
from tairkit.pitfalls import (
    Method,
    ScanConfig,
    Severity,
    scan,
    scan_missing_annotations,
    scan_missing_inverses,
    scan_unconnected,
)
from tairkit.rdf import Graph, Iri, Literal, Triple, serialize_ntriples

EX = "https://example.org/x/"


def _typed(graph, iri, type_iri=vocab.TAIR_CONCEPT, label=None):
    node = Iri(iri)
    graph.add(Triple(node, vocab.RDF_TYPE, type_iri))
    if label is not None:
        graph.add(Triple(node, vocab.RDFS_LABEL, Literal(label, "en")))
    return node


def test_missing_inverse_flags_used_property():
    g = Graph()
    a = _typed(g, EX + "a", label="a")
    b = _typed(g, EX + "b", label="b")
    g.add(Triple(a, Iri(vocab.TAIR + "constrainedBy"), b))
    pitfalls = scan_missing_inverses(g, vocab.default_inverses())
    assert len(pitfalls) == 1
    assert pitfalls[0].code == "P-INV"
    assert pitfalls[0].method is Method.STRUCTURAL
    assert pitfalls[0].affected == (vocab.TAIR + "constrainedBy",)
    assert "constrainedBy" in pitfalls[0].message


def test_declared_inverses_are_clean():
    g = Graph()
    a = _typed(g, EX + "a", label="a")
    b = _typed(g, EX + "b", label="b")
    g.add(Triple(a, vocab.SKOS_BROADER, b))
    g.add(Triple(b, vocab.SKOS_NARROWER, a))
    assert scan_missing_inverses(g, vocab.default_inverses()) == []


def test_non_tair_skos_predicates_exempt():
    g = Graph()
    a = _typed(g, EX + "a", label="a")
    b = _typed(g, EX + "b", label="b")
    g.add(Triple(a, vocab.DCT_SOURCE, b))
    assert scan_missing_inverses(g, {}) == []


def test_annotated_concept_is_clean(mss):
    assert scan_missing_annotations(mss.graph) == []


def test_requirement_without_text_flags_p_ann(mss):
    victim = Iri(next(iter(sorted(r.iri for r in mss.requirements))))
    stripped = Graph.from_triples(
        (
            t
            for t in mss.graph.triples()
            if not (
                t.s == victim
                and (t.p in vocab.LABEL_PREDICATES or t.p in vocab.DESCRIPTION_PREDICATES)
            )
        ),
        dict(mss.graph.namespaces),
    )
    pitfalls = scan_missing_annotations(stripped)
    assert [p.affected for p in pitfalls] == [(victim.value,)]
    assert pitfalls[0].method is Method.LEXICAL


def test_external_subject_is_note_not_pitfall():
    g = Graph()
    _typed(g, EX + "a", label="a")
    ext = Iri(vocab.SKOS + "Collection")
    g.add(Triple(ext, vocab.RDF_TYPE, Iri(vocab.RDFS + "Class")))
    assert scan_missing_annotations(g) == []
    report = scan(g, ScanConfig(graph_id="t"))
    assert any("external element" in note for note in report.notes)


def test_unconnected_isolated_concept():
    g = Graph()
    _typed(g, EX + "lonely", label="lonely")
    pitfalls = scan_unconnected(g)
    assert [p.affected for p in pitfalls] == [((EX + "lonely"),)]
    assert pitfalls[0].severity is Severity.MINOR


def test_fully_linked_fixture_graph_clean(ai_act, mss):
    assert scan_unconnected(ai_act.graph) == []
    assert scan_unconnected(mss.graph) == []


def test_clean_fixture_scan_is_empty(mss):
    report = scan(mss.graph, ScanConfig(graph_id="mss"))
    assert report.pitfalls == ()
    assert report.summary == {"minor": 0, "important": 0, "critical": 0}


def test_scan_rejects_unknown_codes(mss):
    with pytest.raises(ConfigError, match="unknown pitfall codes"):
        scan(mss.graph, ScanConfig(enabled=("P-XXX",)))


def test_scan_respects_disabled_codes():
    g = Graph()
    a = _typed(g, EX + "a", label="a")
    b = _typed(g, EX + "b", label="b")
    g.add(Triple(a, Iri(vocab.TAIR + "constrainedBy"), b))
    with_inv = scan(g, ScanConfig(graph_id="t"))
    assert [p.code for p in with_inv.pitfalls] == ["P-INV"]
    without = scan(g, ScanConfig(enabled=("P-ANN", "P-UNC"), graph_id="t"))
    assert [p.code for p in without.pitfalls] == []


def test_constructed_mutation_summary():
    g = Graph()
    a = _typed(g, EX + "a", label="a")
    b = _typed(g, EX + "b", label="b")
    _typed(g, EX + "isolated", label="iso")
    _typed(g, EX + "silent")  # typed, no label, no description, connected below
    g.add(Triple(a, vocab.SKOS_RELATED, b))
    g.add(Triple(b, vocab.SKOS_RELATED, a))
    g.add(Triple(Iri(EX + "silent"), vocab.SKOS_RELATED, a))
    g.add(Triple(a, vocab.SKOS_RELATED, Iri(EX + "silent")))
    report = scan(g, ScanConfig(graph_id="t"))
    assert report.summary == {"minor": 2, "important": 0, "critical": 0}
    assert sorted(p.code for p in report.pitfalls) == ["P-ANN", "P-UNC"]


def test_all_pitfalls_are_minor():
    g = Graph()
    a = _typed(g, EX + "a")
    g.add(Triple(a, Iri(vocab.TAIR + "constrainedBy"), Iri(EX + "b")))
    _typed(g, EX + "iso")
    report = scan(g, ScanConfig(graph_id="t"))
    assert report.pitfalls and all(p.severity is Severity.MINOR for p in report.pitfalls)


def test_scans_are_read_only(mss):
    before = serialize_ntriples(mss.graph)
    scan(mss.graph, ScanConfig(graph_id="mss"))
    assert serialize_ntriples(mss.graph) == before


def _random_graph(rng):
    g = Graph()
    nodes = [Iri(f"{EX}n{i}") for i in range(rng.randint(2, 6))]
    for node in nodes:
        g.add(Triple(node, vocab.RDF_TYPE, vocab.TAIR_CONCEPT))
        if rng.random() < 0.5:
            g.add(Triple(node, vocab.RDFS_LABEL, Literal(node.value.rsplit("/")[-1])))
    for _ in range(rng.randint(0, 6)):
        a, b = rng.sample(nodes, 2)
        g.add(Triple(a, vocab.SKOS_RELATED, b))
    return g, nodes


def test_monotonicity_of_annotation_and_connection():
    rng = random.Random(11)
    for _ in range(50):
        g, nodes = _random_graph(rng)
        ann_before = len(scan_missing_annotations(g))
        unc_before = len(scan_unconnected(g))
        node = rng.choice(nodes)
        g.add(Triple(node, vocab.RDFS_LABEL, Literal("added label")))
        assert len(scan_missing_annotations(g)) <= ann_before
        a, b = rng.sample(nodes, 2)
        g.add(Triple(a, vocab.SKOS_RELATED, b))
        assert len(scan_unconnected(g)) <= unc_before


def test_manifest_loading_matches_defaults():
    from conftest import fixture_path

    manifest = vocab.load_manifest(fixture_path("vocab.manifest.txt").read_text())
    assert manifest == vocab.default_inverses()
