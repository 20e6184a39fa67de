"""Best-effort adapters for live search engines.

Off by default: engine markup drifts, automated querying may violate
terms of service, and live pages make tests nondeterministic.  The
recorded-fixture provider is the supported path; these adapters exist for
interactive use behind an explicit opt-in flag.
"""

from __future__ import annotations

from urllib.parse import quote_plus

import requests

from ..content.purify import PageContent
from ..errors import ProviderUnavailable
from .fetch import _proxies, fetch_page
from .models import Engine, ProviderConfig, ResultEntry
from .serp import entries_from_hits, load_rules, parse_serp


class LiveProvider:
    def __init__(self, engine: Engine):
        if engine is Engine.OFFLINE:
            raise ValueError("the offline engine has no live adapter")
        self.engine = engine
        self._rules = load_rules(engine)

    def search(self, query: str, config: ProviderConfig) -> list[ResultEntry]:
        url = self._rules.search_url.format(
            query=quote_plus(query), count=config.top_n
        )
        try:
            response = requests.get(
                url,
                timeout=config.timeout_seconds,
                headers={"User-Agent": config.user_agent},
                proxies=_proxies(),
            )
        except requests.RequestException as exc:
            raise ProviderUnavailable(self.engine.value, str(exc)) from exc
        if not response.ok:
            raise ProviderUnavailable(
                self.engine.value, f"result page returned HTTP {response.status_code}"
            )
        hits = parse_serp(self.engine, response.content, self._rules)
        return entries_from_hits(self.engine, hits, config)

    def fetch(self, url: str, config: ProviderConfig) -> PageContent:
        return fetch_page(url, config)
