from __future__ import annotations

import json
from pathlib import Path

import pytest

from tairkit.pipeline import DocumentArtifacts, load_artifacts

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
BASE = "https://example.org/tair"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_oracle(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))


def req_iri(doc_id: str, key: str) -> str:
    return f"{BASE}/{doc_id}/requirement/{key}"


def concept_iri(doc_id: str, slug: str) -> str:
    return f"{BASE}/{doc_id}/concept/{slug}"


def build_ai_act() -> DocumentArtifacts:
    return load_artifacts(
        FIXTURES / "ai-act.txt",
        FIXTURES / "ai-act.categories.txt",
        FIXTURES / "ai-act.lexicon.txt",
    )


def build_mss() -> DocumentArtifacts:
    return load_artifacts(
        FIXTURES / "mss.txt",
        FIXTURES / "mss.categories.txt",
        FIXTURES / "mss.lexicon.txt",
    )


def build_toy_reg() -> DocumentArtifacts:
    return load_artifacts(FIXTURES / "toy-reg.txt", None, FIXTURES / "toy-reg.lexicon.txt")


def build_toy_std() -> DocumentArtifacts:
    return load_artifacts(FIXTURES / "toy-std.txt")


@pytest.fixture(scope="session")
def ai_act() -> DocumentArtifacts:
    return build_ai_act()


@pytest.fixture(scope="session")
def mss() -> DocumentArtifacts:
    return build_mss()


@pytest.fixture(scope="session")
def toy_reg() -> DocumentArtifacts:
    return build_toy_reg()


@pytest.fixture(scope="session")
def toy_std() -> DocumentArtifacts:
    return build_toy_std()
