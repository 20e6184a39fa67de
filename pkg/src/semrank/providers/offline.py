"""Deterministic provider over a local document corpus.

The corpus directory holds a ``manifest.json`` describing the documents:

    {"docs": [{"id": ..., "path": ..., "title": ..., "abstract": ..., "url": ...}]}

Searches return the manifest order truncated to top_n; fetches read the
referenced files from disk.  No network, no nondeterminism — this is the
provider the test suite and demos run on.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..content.purify import FetchStatus, PageContent, purify_html
from ..errors import ManifestError
from ..urlnorm import normalize_url
from .models import Engine, ProviderConfig, ResultEntry

MANIFEST_NAME = "manifest.json"

_REQUIRED_DOC_FIELDS = ("id", "path", "title", "abstract", "url")


class OfflineProvider:
    engine = Engine.OFFLINE

    def __init__(self, corpus_dir: str | Path):
        self.corpus_dir = Path(corpus_dir)
        manifest_path = self.corpus_dir / MANIFEST_NAME
        try:
            with open(manifest_path, encoding="utf-8") as fh:
                manifest = json.load(fh)
        except FileNotFoundError:
            raise ManifestError(f"no {MANIFEST_NAME} in {self.corpus_dir}") from None
        except json.JSONDecodeError as exc:
            raise ManifestError(f"{manifest_path} is not valid JSON: {exc}") from exc

        docs = manifest.get("docs") if isinstance(manifest, dict) else None
        if not isinstance(docs, list):
            raise ManifestError(f"{manifest_path} must contain a 'docs' list")
        self._docs: list[dict] = []
        self._by_url: dict[str, dict] = {}
        corpus_root = self.corpus_dir.resolve()
        for i, doc in enumerate(docs):
            if not isinstance(doc, dict):
                raise ManifestError(f"doc #{i} must be an object")
            missing = [k for k in _REQUIRED_DOC_FIELDS if k not in doc]
            if missing:
                raise ManifestError(f"doc #{i} is missing fields {missing}")
            resolved = (self.corpus_dir / doc["path"]).resolve()
            if not resolved.is_relative_to(corpus_root):
                raise ManifestError(f"doc {doc['id']!r} path escapes the corpus directory")
            self._docs.append(doc)
            self._by_url[normalize_url(doc["url"])] = doc

    def search(self, query: str, config: ProviderConfig) -> list[ResultEntry]:
        del query  # every query retrieves the whole corpus; ranking decides
        return [
            ResultEntry(
                engine=self.engine,
                classical_rank=rank,
                title=doc["title"],
                abstract=doc["abstract"],
                url=doc["url"],
            )
            for rank, doc in enumerate(self._docs[: config.top_n], start=1)
        ]

    def fetch(self, url: str, config: ProviderConfig) -> PageContent:
        del config
        doc = self._by_url.get(normalize_url(url))
        if doc is None:
            return PageContent.empty(url, FetchStatus.unreachable())
        try:
            raw = (self.corpus_dir / doc["path"]).read_bytes()
        except OSError:
            return PageContent.empty(url, FetchStatus.unreachable())
        return purify_html(raw, url)
