"""HTTP page retrieval with never-raise semantics.

A result link that cannot be fetched is not an error: it is a dead link,
which the criteria evaluators count against the engine that offered it.
Every failure mode is therefore folded into PageContent.fetch_status.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable

import requests

from ..content.purify import FetchStatus, PageContent, purify_html
from .models import ProviderConfig

PROXY_ENV_VAR = "SEMRANK_HTTP_PROXY"


def _proxies() -> dict[str, str] | None:
    proxy = os.environ.get(PROXY_ENV_VAR)
    if not proxy:
        return None
    return {"http": proxy, "https": proxy}


def fetch_page(url: str, config: ProviderConfig) -> PageContent:
    """Fetch and purify one page; failures become fetch_status values."""
    try:
        response = requests.get(
            url,
            timeout=config.timeout_seconds,
            headers={"User-Agent": config.user_agent},
            proxies=_proxies(),
        )
    except requests.Timeout:
        return PageContent.empty(url, FetchStatus.timeout())
    except requests.RequestException:
        return PageContent.empty(url, FetchStatus.unreachable())
    if response.status_code >= 400:
        return PageContent.empty(url, FetchStatus.http_error(response.status_code))
    return purify_html(response.content, url)


def fetch_pages(
    urls: Iterable[str], config: ProviderConfig
) -> dict[str, PageContent]:
    """Fetch many pages concurrently, bounded by max_parallel_fetches.

    The result map is keyed by the input URLs, so callers get a
    deterministic merge regardless of completion order.
    """
    url_list = list(urls)
    if not url_list:
        return {}
    workers = min(config.max_parallel_fetches, len(url_list))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        pages = pool.map(lambda u: fetch_page(u, config), url_list)
        return dict(zip(url_list, pages))
