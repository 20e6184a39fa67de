"""Result acquisition: SERP parsing, offline corpus, fixtures, HTTP fetch."""

import json
import shutil
import socket
import threading
import time
from dataclasses import replace
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

from semrank.errors import (
    ConfigError,
    ManifestError,
    ParseFailure,
    ProviderUnavailable,
)
from semrank.providers import (
    Engine,
    FixtureProvider,
    LiveProvider,
    OfflineProvider,
    Provider,
    ProviderConfig,
    ResultEntry,
    entries_from_hits,
    fetch_page,
    fetch_pages,
    load_rules,
    parse_serp,
)
from semrank.providers.serp import ExtractionRules

from conftest import write_corpus

SERP_DIR = Path(__file__).parent / "data" / "serp"
CONFIG = ProviderConfig()


# --- SERP parsing over recorded pages ----------------------------------------


def test_google_page_yields_twenty_hits():
    hits = parse_serp(Engine.GOOGLE, (SERP_DIR / "google.serp.html").read_bytes(),
                      load_rules(Engine.GOOGLE))
    assert len(hits) == 20
    assert hits[0].url == "https://result1.example.com/page"
    assert hits[0].title == "Result 1 title"
    assert hits[0].abstract == "Snippet text for result 1."
    assert hits[19].url == "https://result20.example.com/page"


def test_google_ad_and_related_blocks_excluded():
    hits = parse_serp(Engine.GOOGLE, (SERP_DIR / "google.serp.html").read_bytes(),
                      load_rules(Engine.GOOGLE))
    urls = {hit.url for hit in hits}
    assert not any("ads.example.com" in u for u in urls)
    assert not any("paa.example.com" in u for u in urls)
    assert not any("sponsored.example.com" in u for u in urls)


def test_bing_page_parses_and_resolves_relative_urls():
    hits = parse_serp(Engine.BING, (SERP_DIR / "bing.serp.html").read_bytes(),
                      load_rules(Engine.BING))
    assert len(hits) == 5
    assert hits[0].url == "https://bingres1.example.org/doc"
    assert hits[1].url == "https://www.bing.com/local/redirect2"
    assert hits[0].abstract == "Bing snippet 1."
    assert not any("ads.bing.example" in hit.url for hit in hits)


def test_yahoo_page_parses_with_ad_containers_excluded():
    hits = parse_serp(Engine.YAHOO, (SERP_DIR / "yahoo.serp.html").read_bytes(),
                      load_rules(Engine.YAHOO))
    assert [hit.title for hit in hits] == [f"Yahoo result {i}" for i in range(1, 5)]
    assert not any("ads.yahoo.example" in hit.url for hit in hits)


def test_empty_page_is_parse_failure():
    with pytest.raises(ParseFailure):
        parse_serp(Engine.GOOGLE, b"", load_rules(Engine.GOOGLE))
    with pytest.raises(ParseFailure):
        parse_serp(Engine.GOOGLE, b"   \n ", load_rules(Engine.GOOGLE))


def test_page_without_results_is_parse_failure():
    with pytest.raises(ParseFailure) as info:
        parse_serp(Engine.GOOGLE, b"<html><body><p>No results.</p></body></html>",
                   load_rules(Engine.GOOGLE))
    assert info.value.engine == "google"


def test_rules_require_core_fields():
    with pytest.raises(ConfigError):
        ExtractionRules.from_dict({"base_url": "https://x.example/"})


def test_entries_renumber_after_dedup():
    hits = parse_serp(Engine.GOOGLE, (SERP_DIR / "google_dup.serp.html").read_bytes(),
                      load_rules(Engine.GOOGLE))
    assert len(hits) == 20  # the raw page repeats one URL
    entries = entries_from_hits(Engine.GOOGLE, hits, CONFIG)
    assert len(entries) == 19
    assert [e.classical_rank for e in entries] == list(range(1, 20))
    assert len({e.url for e in entries}) == 19


def test_entries_truncate_to_top_n():
    hits = parse_serp(Engine.GOOGLE, (SERP_DIR / "google.serp.html").read_bytes(),
                      load_rules(Engine.GOOGLE))
    entries = entries_from_hits(Engine.GOOGLE, hits, ProviderConfig(top_n=5))
    assert [e.classical_rank for e in entries] == [1, 2, 3, 4, 5]


# --- shared models -------------------------------------------------------------


def test_engine_from_name():
    assert Engine.from_name(" Google ") is Engine.GOOGLE
    with pytest.raises(ValueError):
        Engine.from_name("altavista")


def test_result_entry_validation():
    with pytest.raises(ValueError):
        ResultEntry(engine=Engine.GOOGLE, classical_rank=0, title="t",
                    abstract="", url="https://a.com/")
    with pytest.raises(ValueError):
        ResultEntry(engine=Engine.GOOGLE, classical_rank=1, title="t",
                    abstract="", url="/relative/only")


def test_provider_config_validation():
    with pytest.raises(ValueError):
        ProviderConfig(top_n=0)
    with pytest.raises(ValueError):
        ProviderConfig(timeout_ms=0)
    assert ProviderConfig(timeout_ms=250).timeout_seconds == 0.25


# --- offline corpus provider ----------------------------------------------------


def _corpus(tmp_path, n=3):
    docs = [
        {"url": f"http://corpus.example/d{i}",
         "html": f"<html><body><p>document {i} text</p></body></html>"}
        for i in range(n)
    ]
    return OfflineProvider(write_corpus(tmp_path, docs))


def test_offline_search_returns_manifest_order(tmp_path):
    provider = _corpus(tmp_path)
    entries = provider.search("anything", CONFIG)
    assert [e.url for e in entries] == [f"http://corpus.example/d{i}" for i in range(3)]
    assert [e.classical_rank for e in entries] == [1, 2, 3]
    assert all(e.engine is Engine.OFFLINE for e in entries)
    assert isinstance(provider, Provider)


def test_offline_search_truncates_to_top_n(tmp_path):
    provider = _corpus(tmp_path, n=30)
    assert len(provider.search("q", CONFIG)) == 20
    assert len(provider.search("q", ProviderConfig(top_n=7))) == 7


def test_offline_fetch_reads_documents(tmp_path):
    provider = _corpus(tmp_path)
    page = provider.fetch("http://corpus.example/d1", CONFIG)
    assert page.fetch_status.is_ok
    assert page.body_text == "document 1 text"


def test_offline_fetch_normalizes_url(tmp_path):
    provider = _corpus(tmp_path)
    page = provider.fetch("http://CORPUS.EXAMPLE:80/d1/", CONFIG)
    assert page.fetch_status.is_ok


def test_offline_fetch_unknown_url_unreachable(tmp_path):
    page = _corpus(tmp_path).fetch("http://elsewhere.example/x", CONFIG)
    assert page.fetch_status.kind == "unreachable"


def test_offline_manifest_missing(tmp_path):
    with pytest.raises(ManifestError):
        OfflineProvider(tmp_path)


def test_offline_manifest_invalid_json(tmp_path):
    (tmp_path / "manifest.json").write_text("{not json", encoding="utf-8")
    with pytest.raises(ManifestError):
        OfflineProvider(tmp_path)


def test_offline_manifest_wrong_shape(tmp_path):
    for payload in ("[]", '{"docs": {}}', '{"docs": ["not-an-object"]}'):
        (tmp_path / "manifest.json").write_text(payload, encoding="utf-8")
        with pytest.raises(ManifestError):
            OfflineProvider(tmp_path)


def test_offline_manifest_missing_fields(tmp_path):
    (tmp_path / "manifest.json").write_text(
        json.dumps({"docs": [{"id": "d0", "path": "x.html"}]}), encoding="utf-8")
    with pytest.raises(ManifestError) as info:
        OfflineProvider(tmp_path)
    assert "missing fields" in str(info.value)


def test_offline_manifest_path_escape_rejected(tmp_path):
    (tmp_path / "manifest.json").write_text(
        json.dumps({"docs": [{
            "id": "d0", "path": "../outside.html", "title": "t",
            "abstract": "", "url": "http://x.example/",
        }]}), encoding="utf-8")
    with pytest.raises(ManifestError) as info:
        OfflineProvider(tmp_path)
    assert "escapes" in str(info.value)


# --- fixture provider -------------------------------------------------------------


def _fixture_dir(tmp_path):
    shutil.copy(SERP_DIR / "google.serp.html", tmp_path / "google.serp.html")
    (tmp_path / "pages").mkdir()
    (tmp_path / "pages" / "r1.html").write_text(
        "<html><body>recorded page one</body></html>", encoding="utf-8")
    (tmp_path / "pages.json").write_text(json.dumps({"pages": [
        {"url": "https://result1.example.com/page", "outcome": "ok",
         "path": "pages/r1.html"},
        {"url": "https://result2.example.com/page", "outcome": "http_error",
         "code": 404},
        {"url": "https://result3.example.com/page", "outcome": "timeout"},
        {"url": "https://result4.example.com/page", "outcome": "unreachable"},
    ]}), encoding="utf-8")
    return tmp_path


def test_fixture_search_replays_recording(tmp_path):
    provider = FixtureProvider(Engine.GOOGLE, _fixture_dir(tmp_path))
    entries = provider.search("ignored", CONFIG)
    assert len(entries) == 20
    assert entries[0].url == "https://result1.example.com/page"


def test_fixture_fetch_outcomes(tmp_path):
    provider = FixtureProvider(Engine.GOOGLE, _fixture_dir(tmp_path))
    ok = provider.fetch("https://result1.example.com/page", CONFIG)
    assert ok.fetch_status.is_ok
    assert ok.body_text == "recorded page one"
    assert provider.fetch("https://result2.example.com/page", CONFIG).fetch_status.code == 404
    assert provider.fetch("https://result3.example.com/page", CONFIG).fetch_status.kind == "timeout"
    assert provider.fetch("https://result4.example.com/page", CONFIG).fetch_status.kind == "unreachable"


def test_fixture_fetch_unlisted_url_unreachable(tmp_path):
    provider = FixtureProvider(Engine.GOOGLE, _fixture_dir(tmp_path))
    page = provider.fetch("https://result9.example.com/page", CONFIG)
    assert page.fetch_status.kind == "unreachable"


def test_fixture_missing_recording_is_unavailable(tmp_path):
    provider = FixtureProvider(Engine.BING, _fixture_dir(tmp_path))
    with pytest.raises(ProviderUnavailable) as info:
        provider.search("q", CONFIG)
    assert info.value.engine == "bing"


def test_fixture_bad_pages_json(tmp_path):
    (tmp_path / "pages.json").write_text("[]", encoding="utf-8")
    with pytest.raises(ManifestError):
        FixtureProvider(Engine.GOOGLE, tmp_path)


def test_fixture_pages_entries_validated(tmp_path):
    for bad in (
        [{"outcome": "ok", "path": "x.html"}],             # no url
        [{"url": "http://x/", "outcome": "teleported"}],   # unknown outcome
        [{"url": "http://x/", "outcome": "ok"}],           # ok without path
        [{"url": "http://x/", "outcome": "http_error"}],   # error without code
    ):
        (tmp_path / "pages.json").write_text(
            json.dumps({"pages": bad}), encoding="utf-8")
        with pytest.raises(ManifestError):
            FixtureProvider(Engine.GOOGLE, tmp_path)


def test_fixture_rules_override(tmp_path):
    (tmp_path / "google.rules.json").write_text(json.dumps({
        "base_url": "https://recorded.example/",
        "result_block_selector": "div.hit",
        "title_selector": "span.t",
        "url_selector": "a[href]",
    }), encoding="utf-8")
    (tmp_path / "google.serp.html").write_text(
        '<div class="hit"><span class="t">Custom</span>'
        '<a href="https://custom.example/1">x</a></div>', encoding="utf-8")
    entries = FixtureProvider(Engine.GOOGLE, tmp_path).search("q", CONFIG)
    assert [e.url for e in entries] == ["https://custom.example/1"]
    assert entries[0].title == "Custom"


# --- live fetching over a local server ---------------------------------------------


class _Handler(BaseHTTPRequestHandler):
    def do_GET(self):
        if self.path.startswith("/ok"):
            body = b"<html><title>Served</title><body><p>served page body</p></body></html>"
            self.send_response(200)
            self.send_header("Content-Type", "text/html; charset=utf-8")
            self.end_headers()
            self.wfile.write(body)
        elif self.path.startswith("/slow"):
            time.sleep(2.0)
            self.send_response(200)
            self.end_headers()
            self.wfile.write(b"late")
        elif self.path.startswith("/serp"):
            self.send_response(200)
            self.end_headers()
            self.wfile.write((SERP_DIR / "google.serp.html").read_bytes())
        else:
            self.send_response(404)
            self.end_headers()
            self.wfile.write(b"gone")

    def log_message(self, *args):
        pass


@pytest.fixture(scope="module")
def http_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_port}"
    server.shutdown()
    thread.join()


def test_fetch_page_ok(http_server):
    page = fetch_page(f"{http_server}/ok", CONFIG)
    assert page.fetch_status.is_ok
    assert "served page body" in page.body_text
    assert page.title == "Served"


def test_fetch_page_http_error(http_server):
    page = fetch_page(f"{http_server}/missing", CONFIG)
    assert page.fetch_status.kind == "http_error"
    assert page.fetch_status.code == 404
    assert page.body_text == ""


def test_fetch_page_timeout_within_bound(http_server):
    config = ProviderConfig(timeout_ms=300)
    started = time.monotonic()
    page = fetch_page(f"{http_server}/slow", config)
    elapsed = time.monotonic() - started
    assert page.fetch_status.kind == "timeout"
    assert elapsed < 0.3 + 0.5


def test_fetch_page_unreachable():
    probe = socket.socket()
    probe.bind(("127.0.0.1", 0))
    port = probe.getsockname()[1]
    probe.close()
    page = fetch_page(f"http://127.0.0.1:{port}/", ProviderConfig(timeout_ms=500))
    assert page.fetch_status.kind == "unreachable"


def test_fetch_pages_keyed_by_input_url(http_server):
    urls = [f"{http_server}/ok", f"{http_server}/missing"]
    pages = fetch_pages(urls, CONFIG)
    assert set(pages) == set(urls)
    assert pages[urls[0]].fetch_status.is_ok
    assert pages[urls[1]].fetch_status.code == 404
    assert fetch_pages([], CONFIG) == {}


def test_live_provider_rejects_offline_engine():
    with pytest.raises(ValueError):
        LiveProvider(Engine.OFFLINE)


def test_live_provider_search_against_local_serp(http_server):
    provider = LiveProvider(Engine.GOOGLE)
    provider._rules = replace(provider._rules,
                              search_url=http_server + "/serp?q={query}&num={count}")
    entries = provider.search("dogs", CONFIG)
    assert len(entries) == 20
    assert entries[0].classical_rank == 1


def test_live_provider_non_ok_serp_is_unavailable(http_server):
    provider = LiveProvider(Engine.GOOGLE)
    provider._rules = replace(provider._rules,
                              search_url=http_server + "/nope?q={query}&num={count}")
    with pytest.raises(ProviderUnavailable):
        provider.search("dogs", CONFIG)
