"""Data-driven extraction of result triplets from engine result pages.

Engine markup changes without notice, so the selectors live in JSON rule
files rather than code; adjusting to drift means editing the rules, not
shipping a release.  The same rules drive both live pages and recorded
fixture pages.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import NamedTuple
from urllib.parse import urljoin

from ..content.html import Element, parse_html, select, select_one
from ..content.purify import decode_html
from ..errors import ConfigError, ParseFailure
from ..urlnorm import normalize_url
from .models import Engine, ProviderConfig, ResultEntry


class SerpHit(NamedTuple):
    title: str
    abstract: str
    url: str


@dataclass(frozen=True)
class ExtractionRules:
    """Where to find results inside one engine's markup.

    ``exclude_selectors`` drop whole blocks (ads, related-question inserts);
    field selectors are evaluated inside each surviving result block.
    """

    base_url: str
    search_url: str
    result_block_selector: str
    title_selector: str
    url_selector: str
    url_attribute: str = "href"
    abstract_selector: str = ""
    exclude_selectors: tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def from_dict(cls, data: dict) -> "ExtractionRules":
        try:
            return cls(
                base_url=data["base_url"],
                search_url=data.get("search_url", ""),
                result_block_selector=data["result_block_selector"],
                title_selector=data["title_selector"],
                url_selector=data["url_selector"],
                url_attribute=data.get("url_attribute", "href"),
                abstract_selector=data.get("abstract_selector", ""),
                exclude_selectors=tuple(data.get("exclude_selectors", ())),
            )
        except KeyError as exc:
            raise ConfigError(f"extraction rules missing field {exc}") from exc

    @classmethod
    def from_file(cls, path: str | Path) -> "ExtractionRules":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def load_rules(engine: Engine) -> ExtractionRules:
    """Load the packaged rules for ``engine``."""
    name = f"{engine.value}.json"
    ref = resources.files("semrank.providers") / "rules" / name
    try:
        data = json.loads(ref.read_text("utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"no packaged extraction rules for {engine.value}") from None
    return ExtractionRules.from_dict(data)


def parse_serp(engine: Engine, html: bytes, rules: ExtractionRules) -> list[SerpHit]:
    """Extract (title, abstract, url) triplets in page order.

    Raises :class:`ParseFailure` for an empty page or when no block yields
    a usable hit.  Relative hit URLs are resolved against the engine base.
    """
    if not html.strip():
        raise ParseFailure(engine.value, "empty result page")
    root = parse_html(decode_html(html))

    excluded: set[int] = set()
    for selector in rules.exclude_selectors:
        for el in select(root, selector):
            excluded.add(id(el))

    def under_excluded(el: Element) -> bool:
        node = el
        while isinstance(node, Element):
            if id(node) in excluded:
                return True
            node = node.parent
        return False

    hits: list[SerpHit] = []
    for block in select(root, rules.result_block_selector):
        if under_excluded(block):
            continue
        link = select_one(block, rules.url_selector)
        if link is None:
            continue
        href = link.get(rules.url_attribute, "").strip()
        if not href:
            continue
        title_el = select_one(block, rules.title_selector)
        abstract_el = (
            select_one(block, rules.abstract_selector) if rules.abstract_selector else None
        )
        hits.append(
            SerpHit(
                title=title_el.text() if title_el is not None else "",
                abstract=abstract_el.text() if abstract_el is not None else "",
                url=urljoin(rules.base_url, href),
            )
        )
    if not hits:
        raise ParseFailure(engine.value, "no results extracted")
    return hits


def entries_from_hits(
    engine: Engine, hits: list[SerpHit], config: ProviderConfig
) -> list[ResultEntry]:
    """Turn raw hits into ranked entries: dedup repeats, renumber, truncate."""
    entries: list[ResultEntry] = []
    seen: set[str] = set()
    for hit in hits:
        key = normalize_url(hit.url)
        if key in seen:
            continue
        seen.add(key)
        entries.append(
            ResultEntry(
                engine=engine,
                classical_rank=len(entries) + 1,
                title=hit.title,
                abstract=hit.abstract,
                url=hit.url,
            )
        )
        if len(entries) == config.top_n:
            break
    return entries
