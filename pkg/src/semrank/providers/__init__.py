"""Result acquisition: engine adapters, SERP extraction, page fetching."""

from .fetch import fetch_page, fetch_pages
from .fixtures import FixtureProvider
from .live import LiveProvider
from .models import Engine, Provider, ProviderConfig, ResultEntry
from .offline import OfflineProvider
from .serp import ExtractionRules, SerpHit, entries_from_hits, load_rules, parse_serp

__all__ = [
    "Engine",
    "ExtractionRules",
    "FixtureProvider",
    "LiveProvider",
    "OfflineProvider",
    "Provider",
    "ProviderConfig",
    "ResultEntry",
    "SerpHit",
    "entries_from_hits",
    "fetch_page",
    "fetch_pages",
    "load_rules",
    "parse_serp",
]
