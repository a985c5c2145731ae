from __future__ import annotations

import random

import pytest

from tairkit.concepts import (
    Category,
    apply_relations,
    build_concept_scheme,
    extract_definitions,
    infer_semantic_relations,
    load_category_map,
    slugify,
)
from tairkit.document import DefinitionEntry, parse_document
from tairkit.errors import CycleError, SchemeError

from conftest import BASE, concept_iri, fixture_path


def _defs(*entries):
    out = []
    for i, (term, path, refs) in enumerate(entries, start=1):
        out.append(
            DefinitionEntry(
                term=term,
                definition_text=f"definition of {term}",
                subclause_path=path or str(i),
                cross_refs=tuple(refs),
                source_clause="t",
            )
        )
    return out


def assert_scheme_invariants(scheme):
    by_iri = scheme.by_iri()
    for c in scheme.concepts:
        for target in c.broader:
            assert c.iri in by_iri[target].narrower
        for target in c.narrower:
            assert c.iri in by_iri[target].broader
        for target in c.related:
            assert target != c.iri
            assert c.iri in by_iri[target].related
    # broader graph is acyclic
    graph = {c.iri: set(c.broader) for c in scheme.concepts}
    state = {}

    def visit(node):
        state[node] = 1
        for nxt in graph[node]:
            assert state.get(nxt) != 1, f"broader cycle through {nxt}"
            if state.get(nxt, 0) == 0:
                visit(nxt)
        state[node] = 2

    for node in graph:
        if state.get(node, 0) == 0:
            visit(node)


def test_slugify():
    assert slugify("CE marking") == "ce-marking"
    assert slugify("  Real-Time  (remote) ID ") == "real-time-remote-id"


def test_extract_definitions_ai_act(ai_act):
    terms = [d.term for d in extract_definitions(ai_act.doc)]
    for expected in ("provider", "AI system", "CE marking", "conformity assessment"):
        assert expected in terms
    assert len(terms) == 16


def test_extract_definitions_mss_includes_top_management(mss):
    assert "top management" in [d.term for d in extract_definitions(mss.doc)]


def test_extract_definitions_normative_only_document():
    doc = parse_document(
        '#doc id=x title="X" type=regulation base=https://example.org/\n'
        "#clause id=1 kind=normative\nThe operator shall act.\n"
    )
    assert extract_definitions(doc) == []


def test_build_scheme_categories():
    defs = _defs(("provider", None, []), ("CE marking", None, []), ("thing", None, []))
    scheme = build_concept_scheme(
        defs, {"provider": Category.ACTOR, "CE marking": "artefact"}, BASE + "/", "doc"
    )
    by_label = {c.pref_label: c for c in scheme.concepts}
    assert by_label["provider"].category is Category.ACTOR
    assert by_label["CE marking"].category is Category.ARTEFACT
    assert by_label["thing"].category is Category.UNCLASSIFIED
    assert by_label["CE marking"].iri == f"{BASE}/doc/concept/ce-marking"


def test_build_scheme_empty():
    scheme = build_concept_scheme([], {}, BASE, "doc")
    assert scheme.concepts == ()


def test_build_scheme_rejects_duplicate_terms():
    defs = _defs(("Provider", None, []), ("provider", None, []))
    with pytest.raises(SchemeError, match="duplicate term"):
        build_concept_scheme(defs, {}, BASE, "doc")


def test_build_scheme_rejects_category_for_undefined_term():
    with pytest.raises(SchemeError, match="undefined terms"):
        build_concept_scheme(_defs(("provider", None, [])), {"ghost": "actor"}, BASE, "doc")


def test_category_map_parsing():
    mapping = load_category_map("# comment\nprovider = actor\nCE marking = artefact\n")
    assert mapping == {"provider": Category.ACTOR, "ce marking": Category.ARTEFACT}
    with pytest.raises(SchemeError, match="unknown category"):
        load_category_map("provider = thing\n")


def test_infer_nesting_yields_broader(ai_act):
    rbis = concept_iri("ai-act", "remote-biometric-identification-system")
    real_time = concept_iri("ai-act", "real-time-remote-biometric-identification-system")
    post = concept_iri("ai-act", "post-remote-biometric-identification-system")
    edges = set(ai_act.relation_edges)
    assert (real_time, "broader", rbis) in edges
    assert (post, "broader", rbis) in edges


def test_infer_cross_reference_yields_related(ai_act):
    provider = concept_iri("ai-act", "provider")
    potm = concept_iri("ai-act", "placing-on-the-market")
    assert (provider, "related", potm) in set(ai_act.relation_edges)


def test_infer_broader_suppresses_related(ai_act):
    # real-time RBIS cross-references its parent; the nesting edge wins
    rbis = concept_iri("ai-act", "remote-biometric-identification-system")
    real_time = concept_iri("ai-act", "real-time-remote-biometric-identification-system")
    related = {(s, t) for s, rel, t in ai_act.relation_edges if rel == "related"}
    assert (real_time, rbis) not in related and (rbis, real_time) not in related


def test_infer_deduplicates_mutual_references(ai_act):
    provider = concept_iri("ai-act", "provider")
    pis = concept_iri("ai-act", "putting-into-service")
    related = [
        (s, t)
        for s, rel, t in ai_act.relation_edges
        if rel == "related" and {s, t} == {provider, pis}
    ]
    assert len(related) == 1


def test_infer_nothing_without_nesting_or_refs():
    defs = _defs(("alpha", "1", []), ("beta", "2", []))
    scheme = build_concept_scheme(defs, {}, BASE, "doc")
    assert infer_semantic_relations(scheme, defs) == []


def test_apply_relations_keeps_invariants(ai_act, mss):
    assert_scheme_invariants(ai_act.scheme)
    assert_scheme_invariants(mss.scheme)


def test_apply_relations_rejects_cycles():
    defs = _defs(("a", "1", []), ("b", "2", []))
    scheme = build_concept_scheme(defs, {}, BASE, "doc")
    a, b = (c.iri for c in scheme.concepts)
    with pytest.raises(CycleError, match="broader cycle"):
        apply_relations(scheme, [(a, "broader", b), (b, "broader", a)])


def test_apply_relations_rejects_unknown_targets():
    scheme = build_concept_scheme(_defs(("a", "1", [])), {}, BASE, "doc")
    with pytest.raises(SchemeError, match="unknown concept"):
        apply_relations(scheme, [(scheme.concepts[0].iri, "related", "https://x/none")])


def test_concept_count_matches_definition_count(ai_act, mss):
    assert len(ai_act.scheme.concepts) == len(extract_definitions(ai_act.doc))
    assert len(mss.scheme.concepts) == len(extract_definitions(mss.doc))


def test_build_and_infer_are_deterministic():
    text = fixture_path("ai-act.txt").read_text(encoding="utf-8")
    doc = parse_document(text)
    defs = extract_definitions(doc)
    first = build_concept_scheme(defs, {}, doc.base_iri, doc.doc_id)
    second = build_concept_scheme(defs, {}, doc.base_iri, doc.doc_id)
    assert first == second
    assert infer_semantic_relations(first, defs) == infer_semantic_relations(second, defs)


def test_random_schemes_hold_invariants():
    rng = random.Random(42)
    for case in range(100):
        n = rng.randint(0, 10)
        defs = []
        paths = []
        for i in range(n):
            if paths and rng.random() < 0.4:
                path = f"{rng.choice(paths)}.{i}"
            else:
                path = str(i + 1)
            paths.append(path)
            earlier = [d.term for d in defs]
            refs = tuple(rng.sample(earlier, k=min(len(earlier), rng.randint(0, 2))))
            defs.append(
                DefinitionEntry(
                    term=f"term {case} {i}",
                    definition_text="d",
                    subclause_path=path,
                    cross_refs=refs,
                    source_clause="t",
                )
            )
        scheme = build_concept_scheme(defs, {}, BASE, f"doc{case}")
        scheme = apply_relations(scheme, infer_semantic_relations(scheme, defs))
        assert len(scheme.concepts) == n
        assert_scheme_invariants(scheme)
