"""Provider that replays recorded engine pages from a fixture directory.

Layout:

    <dir>/<engine>.serp.html     recorded result page, parsed with the
                                 engine's extraction rules
    <dir>/<engine>.rules.json    optional rules override for the recording
    <dir>/pages.json             fetch outcomes for result URLs:
                                 {"pages": [{"url": ..., "outcome": "ok",
                                 "path": ...} | {"url": ..., "outcome":
                                 "http_error", "code": 404} | {"url": ...,
                                 "outcome": "timeout" | "unreachable"}]}

URLs absent from pages.json fetch as unreachable, which keeps recordings
honest: every page a test depends on must be committed.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..content.purify import FetchStatus, PageContent, purify_html
from ..errors import ManifestError, ProviderUnavailable
from ..urlnorm import normalize_url
from .models import Engine, ProviderConfig, ResultEntry
from .serp import ExtractionRules, entries_from_hits, load_rules, parse_serp

PAGES_NAME = "pages.json"

_OUTCOMES = ("ok", "http_error", "timeout", "unreachable")


def _load_pages(fixtures_dir: Path) -> dict[str, dict]:
    path = fixtures_dir / PAGES_NAME
    if not path.is_file():
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path} is not valid JSON: {exc}") from exc
    pages = data.get("pages") if isinstance(data, dict) else None
    if not isinstance(pages, list):
        raise ManifestError(f"{path} must contain a 'pages' list")
    by_url: dict[str, dict] = {}
    for i, page in enumerate(pages):
        if not isinstance(page, dict) or "url" not in page:
            raise ManifestError(f"page #{i} has no url")
        outcome = page.get("outcome", "ok")
        if outcome not in _OUTCOMES:
            raise ManifestError(f"page #{i} has unknown outcome {outcome!r}")
        if outcome == "ok" and "path" not in page:
            raise ManifestError(f"page #{i} is ok but has no path")
        if outcome == "http_error" and "code" not in page:
            raise ManifestError(f"page #{i} is http_error but has no code")
        by_url[normalize_url(page["url"])] = page
    return by_url


class FixtureProvider:
    def __init__(self, engine: Engine, fixtures_dir: str | Path):
        self.engine = engine
        self.fixtures_dir = Path(fixtures_dir)
        rules_override = self.fixtures_dir / f"{engine.value}.rules.json"
        self._rules: ExtractionRules = (
            ExtractionRules.from_file(rules_override)
            if rules_override.is_file()
            else load_rules(engine)
        )
        self._pages = _load_pages(self.fixtures_dir)

    def search(self, query: str, config: ProviderConfig) -> list[ResultEntry]:
        del query  # the recording already answers one fixed query
        serp_path = self.fixtures_dir / f"{self.engine.value}.serp.html"
        try:
            raw = serp_path.read_bytes()
        except OSError as exc:
            raise ProviderUnavailable(self.engine.value, f"no recorded page: {exc}") from exc
        hits = parse_serp(self.engine, raw, self._rules)
        return entries_from_hits(self.engine, hits, config)

    def fetch(self, url: str, config: ProviderConfig) -> PageContent:
        del config
        page = self._pages.get(normalize_url(url))
        if page is None:
            return PageContent.empty(url, FetchStatus.unreachable())
        outcome = page.get("outcome", "ok")
        if outcome == "http_error":
            return PageContent.empty(url, FetchStatus.http_error(int(page["code"])))
        if outcome == "timeout":
            return PageContent.empty(url, FetchStatus.timeout())
        if outcome == "unreachable":
            return PageContent.empty(url, FetchStatus.unreachable())
        try:
            raw = (self.fixtures_dir / page["path"]).read_bytes()
        except OSError:
            return PageContent.empty(url, FetchStatus.unreachable())
        return purify_html(raw, url)
