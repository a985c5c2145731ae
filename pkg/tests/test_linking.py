from __future__ import annotations

import pytest

from tairkit.concepts import Category
from tairkit.errors import LexiconError
from tairkit.linking import (
    LinkRole,
    align_lexical_entries,
    assign_link_roles,
    canonical_phrase,
    harvest_lexical_entries,
    load_lexicon,
    match_concepts,
)
from tairkit.requirements import Modality, Requirement

from conftest import concept_iri, req_iri


def _req(text, doc_id="ai-act", clause="t1", ordinal=1):
    return Requirement(
        iri=req_iri(doc_id, f"{clause}-{ordinal}"),
        text=text,
        modality=Modality.SHALL,
        source_clause=clause,
        ordinal=ordinal,
        doc_id=doc_id,
    )


def _labels(matches, scheme):
    by_iri = scheme.by_iri()
    return {by_iri[m.concept_iri].pref_label for m in matches}


def test_longest_match_wins(ai_act):
    req = _req(
        "A real-time remote biometric identification system shall log every comparison."
    )
    labels = _labels(match_concepts(req, ai_act.scheme), ai_act.scheme)
    assert "real-time remote biometric identification system" in labels
    assert "remote biometric identification system" not in labels
    assert "biometric data" not in labels


def test_ce_marking_example(ai_act):
    req = _req("The provider shall affix the CE marking.")
    assert _labels(match_concepts(req, ai_act.scheme), ai_act.scheme) == {
        "provider",
        "CE marking",
    }


def test_no_defined_term_no_matches(ai_act):
    req = _req("Nothing of note happens here.")
    assert match_concepts(req, ai_act.scheme) == []


def test_matching_is_case_insensitive(ai_act):
    req_lower = _req("the provider shall affix the ce marking.")
    req_upper = _req("THE PROVIDER SHALL AFFIX THE CE MARKING.")
    lower = {m.concept_iri for m in match_concepts(req_lower, ai_act.scheme)}
    upper = {m.concept_iri for m in match_concepts(req_upper, ai_act.scheme)}
    assert lower == upper == {concept_iri("ai-act", "provider"), concept_iri("ai-act", "ce-marking")}


def test_matching_tolerates_plurals(ai_act):
    req = _req("Providers shall keep their AI systems documented.")
    labels = _labels(match_concepts(req, ai_act.scheme), ai_act.scheme)
    assert {"provider", "AI system"} <= labels


def test_each_concept_reported_once(ai_act):
    req = _req("The provider informs the provider of providers.")
    matches = match_concepts(req, ai_act.scheme)
    assert len(matches) == 1
    assert matches[0].surface.lower() == "provider"


def test_surface_occurs_verbatim(ai_act, mss):
    for artifacts in (ai_act, mss):
        for m in artifacts.matches:
            req = next(r for r in artifacts.requirements if r.iri == m.requirement_iri)
            assert m.surface.lower() in req.text.lower()


def test_subject_actor_becomes_implementer(ai_act):
    req = _req("The provider shall establish a quality management system.")
    matches = assign_link_roles(req, match_concepts(req, ai_act.scheme), ai_act.scheme)
    roles = {m.concept_iri: m.role for m in matches}
    assert roles[concept_iri("ai-act", "provider")] is LinkRole.IMPLEMENTED_BY


def test_top_management_implements_leadership(mss):
    leadership = req_iri("mss", "5.1-1")
    match = next(
        m
        for m in mss.matches
        if m.requirement_iri == leadership
        and m.concept_iri == concept_iri("mss", "top-management")
    )
    assert match.role is LinkRole.IMPLEMENTED_BY


def test_second_actor_is_tracked(ai_act):
    req = _req("The provider shall inform the notified body.")
    matches = assign_link_roles(req, match_concepts(req, ai_act.scheme), ai_act.scheme)
    roles = {m.concept_iri: m.role for m in matches}
    assert roles[concept_iri("ai-act", "provider")] is LinkRole.IMPLEMENTED_BY
    assert roles[concept_iri("ai-act", "notified-body")] is LinkRole.TRACKED_BY


def test_actor_after_modal_is_not_implementer(ai_act):
    req = _req("The documentation shall be handed to the user on request.")
    matches = assign_link_roles(req, match_concepts(req, ai_act.scheme), ai_act.scheme)
    roles = {m.concept_iri: m.role for m in matches}
    assert roles[concept_iri("ai-act", "user")] is LinkRole.TRACKED_BY


def test_at_most_one_implementer_per_requirement(ai_act, mss):
    for artifacts in (ai_act, mss):
        by_req = {}
        for m in artifacts.matches:
            if m.role is LinkRole.IMPLEMENTED_BY:
                by_req[m.requirement_iri] = by_req.get(m.requirement_iri, 0) + 1
        assert all(count == 1 for count in by_req.values())


def test_all_roles_assigned_and_targets_in_scheme(ai_act, mss):
    for artifacts in (ai_act, mss):
        scheme_iris = {c.iri for c in artifacts.scheme.concepts}
        for m in artifacts.matches:
            assert m.role in (LinkRole.USES, LinkRole.IMPLEMENTED_BY, LinkRole.TRACKED_BY)
            assert m.concept_iri in scheme_iris


def test_harvest_risk_management_system(ai_act):
    entry = next(
        e for e in ai_act.lexical_entries if e.normalized_form == "risk management system"
    )
    assert set(entry.occurrences) == {req_iri("ai-act", "art9.1-1"), req_iri("ai-act", "art9.2-1")}
    assert entry.category is Category.ARTEFACT


def test_harvest_excludes_defined_terms(ai_act):
    # "putting into service" sits in the lexicon but is a defined concept
    forms = {e.normalized_form for e in ai_act.lexical_entries}
    assert "putting into service" not in forms


def test_harvest_drops_phrases_without_occurrences(ai_act):
    forms = {e.surface_form for e in ai_act.lexical_entries}
    assert "eliminating or reducing risks" not in forms


def test_harvest_empty_lexicon(ai_act):
    assert harvest_lexical_entries(ai_act.requirements, ai_act.scheme, []) == []


def test_no_entry_collides_with_defined_labels(ai_act, mss):
    for artifacts in (ai_act, mss):
        defined = {
            canonical_phrase(label)
            for c in artifacts.scheme.concepts
            for label in (c.pref_label, *c.alt_labels)
        }
        for entry in artifacts.lexical_entries:
            assert entry.normalized_form not in defined


def test_lexicon_parsing_and_errors():
    phrases = load_lexicon("# comment\nrisk register category=artefact\nhuman review\n")
    assert phrases == [("risk register", Category.ARTEFACT), ("human review", None)]
    with pytest.raises(LexiconError, match="unknown category"):
        load_lexicon("thing category=widget\n")
    with pytest.raises(LexiconError, match="duplicate"):
        load_lexicon("logs\nlog\n")


def test_alignment_candidates(toy_reg, toy_std):
    aligned = align_lexical_entries(toy_reg.lexical_entries, [toy_std.scheme])
    by_form = {e.normalized_form: e for e in aligned}
    assert by_form["transparency report"].alignment_candidates == (
        ("toy-std", concept_iri("toy-std", "transparency-report")),
    )
    assert by_form["personal data"].alignment_candidates == ()
