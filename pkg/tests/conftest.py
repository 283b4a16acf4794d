from __future__ import annotations

import json
from pathlib import Path

import pytest

from relterms.corpus import Corpus, ingest, load_corpus

FIXTURE_DIR = Path(__file__).parent / "fixtures" / "mini_wiki"


@pytest.fixture(scope="session")
def mini_wiki_paths() -> dict:
    return {
        "documents": FIXTURE_DIR / "docs.tsv",
        "links": FIXTURE_DIR / "links.tsv",
        "categories": FIXTURE_DIR / "categories.tsv",
        "membership": FIXTURE_DIR / "membership.tsv",
        "manifest": FIXTURE_DIR / "manifest.json",
    }


@pytest.fixture(scope="session")
def mini_wiki(mini_wiki_paths) -> Corpus:
    return load_corpus(
        mini_wiki_paths["documents"],
        mini_wiki_paths["links"],
        mini_wiki_paths["categories"],
        mini_wiki_paths["membership"],
    )


@pytest.fixture(scope="session")
def golden_automaton() -> dict:
    return json.loads((FIXTURE_DIR / "golden_automaton.json").read_text(encoding="utf-8"))


def make_corpus(docs=(), links=(), cats=(), members=()) -> Corpus:
    """Inline corpus from raw record lines."""
    return ingest(list(docs), list(links), list(cats), list(members))


def assert_docs_equal(a, b, path="$", tol=1e-9):
    """Recursive structural equality with an absolute tolerance on floats."""
    if isinstance(a, dict) and isinstance(b, dict):
        assert a.keys() == b.keys(), f"{path}: keys {sorted(a)} != {sorted(b)}"
        for key in a:
            assert_docs_equal(a[key], b[key], f"{path}.{key}", tol)
    elif isinstance(a, list) and isinstance(b, list):
        assert len(a) == len(b), f"{path}: length {len(a)} != {len(b)}"
        for idx, (x, y) in enumerate(zip(a, b)):
            assert_docs_equal(x, y, f"{path}[{idx}]", tol)
    elif isinstance(a, float) or isinstance(b, float):
        assert abs(a - b) <= tol, f"{path}: {a} != {b}"
    else:
        assert a == b, f"{path}: {a!r} != {b!r}"
