from __future__ import annotations

import json
from pathlib import Path

import pytest

from semrank.content.tokenize import load_stopwords
from semrank.wordnet import bundled_dict_dir, load_db

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def real_db():
    """The full bundled dictionary; parsed once per test run."""
    return load_db(bundled_dict_dir())


@pytest.fixture(scope="session")
def mini_db():
    return load_db(DATA_DIR / "mini_dict")


@pytest.fixture(scope="session")
def stopwords():
    return load_stopwords()


def write_corpus(root: Path, docs: list[dict]) -> Path:
    """Materialize an offline corpus directory from (title, url, html) dicts."""
    pages = root / "pages"
    pages.mkdir(parents=True, exist_ok=True)
    manifest = []
    for i, doc in enumerate(docs):
        name = f"doc{i}.html"
        (pages / name).write_text(doc["html"], encoding="utf-8")
        manifest.append(
            {
                "id": doc.get("id", f"doc{i}"),
                "path": f"pages/{name}",
                "title": doc.get("title", f"Document {i}"),
                "abstract": doc.get("abstract", ""),
                "url": doc["url"],
            }
        )
    (root / "manifest.json").write_text(
        json.dumps({"docs": manifest}, indent=2), encoding="utf-8"
    )
    return root
