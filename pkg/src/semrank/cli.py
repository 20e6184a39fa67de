"""Command line entry points: expand, search, serve."""

from __future__ import annotations

import json
import os
import sys
from dataclasses import replace
from pathlib import Path

import click

from . import __version__
from .config import default_user_agent, load_config
from .errors import ConfigError, SemrankError
from .providers import (
    Engine,
    FixtureProvider,
    LiveProvider,
    OfflineProvider,
    Provider,
    ProviderConfig,
)
from .ranking import EngineScore, ScoredResult
from .session import RankedSession, SessionRunner, SessionStore
from .vsm import QUERY_WEIGHTINGS
from .wordnet import ExpansionConfig, expand_query, load_db, resolve_dict_dir
from .wordnet.db import Pos
from .content.tokenize import load_stopwords

_POS_NAMES = {
    "noun": Pos.NOUN,
    "verb": Pos.VERB,
    "adjective": Pos.ADJECTIVE,
    "adj": Pos.ADJECTIVE,
    "adverb": Pos.ADVERB,
    "adv": Pos.ADVERB,
}


def _default_sessions_dir() -> Path:
    xdg = os.environ.get("XDG_DATA_HOME")
    base = Path(xdg) if xdg else Path.home() / ".local" / "share"
    return base / "semrank" / "sessions"


def _parse_engines(raw: str) -> list[Engine]:
    engines = []
    for name in raw.split(","):
        name = name.strip()
        if not name:
            continue
        try:
            engines.append(Engine.from_name(name))
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    if not engines:
        raise click.UsageError("no engine names given")
    return engines


def _build_providers(
    offline: str | None, fixtures: str | None, live: bool, engines: str
) -> tuple[Provider, ...]:
    sources = [s for s in (offline, fixtures, "live" if live else None) if s]
    if len(sources) > 1:
        raise click.UsageError("pick exactly one of --offline, --fixtures, --live")
    if offline:
        return (OfflineProvider(offline),)
    if fixtures:
        fixtures_dir = Path(fixtures)
        wanted = _parse_engines(engines)
        available = [
            engine
            for engine in wanted
            if (fixtures_dir / f"{engine.value}.serp.html").is_file()
        ]
        if not available:
            raise click.UsageError(
                f"no <engine>.serp.html recordings in {fixtures_dir} "
                f"for engines {[e.value for e in wanted]}"
            )
        return tuple(FixtureProvider(engine, fixtures_dir) for engine in available)
    if live:
        return tuple(
            LiveProvider(engine)
            for engine in _parse_engines(engines)
            if engine is not Engine.OFFLINE
        )
    raise click.UsageError(
        "pick a result source: --offline DIR, --fixtures DIR, or --live"
    )


def _make_runner(
    wordnet_dir: str | None,
    stopwords_path: str | None,
    providers: tuple[Provider, ...],
    config_path: str | None,
    top_n: int,
    timeout_ms: int,
    alpha: float | None,
    beta: float | None,
    query_weighting: str | None,
    sessions_dir: str | None,
) -> SessionRunner:
    app_config = load_config(config_path)
    weighting = app_config.weighting
    overrides = {
        key: value
        for key, value in (
            ("alpha", alpha),
            ("beta", beta),
            ("query_weighting", query_weighting),
        )
        if value is not None
    }
    try:
        if overrides:
            weighting = replace(weighting, **overrides)
        provider_config = ProviderConfig(
            top_n=top_n, timeout_ms=timeout_ms, user_agent=default_user_agent()
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    store = SessionStore(sessions_dir if sessions_dir else _default_sessions_dir())
    return SessionRunner(
        db=load_db(resolve_dict_dir(wordnet_dir)),
        providers=providers,
        provider_config=provider_config,
        weighting=weighting,
        criteria=app_config.criteria,
        stopwords=load_stopwords(stopwords_path),
        store=store,
    )


def _format_result_row(result: ScoredResult) -> str:
    entry = result.entry
    flags = ",".join(sorted(result.flags)) or "-"
    title = entry.title if len(entry.title) <= 47 else entry.title[:44] + "..."
    return (
        f"{result.semantic_rank:>4}  "
        f"{entry.engine.value + ':' + str(entry.classical_rank):<12} "
        f"{result.rsv:>7.4f}  {flags:<22} {title}  {entry.url}"
    )


def _print_table(session: RankedSession) -> None:
    click.echo(f"session {session.session_id}")
    click.echo(f"query: {session.query}")
    click.echo()
    click.echo(f"{'sem':>4}  {'classical':<12} {'rsv':>7}  {'flags':<22} title / url")
    for result in session.results:
        click.echo(_format_result_row(result))
    click.echo()
    for score in session.engine_scores:
        click.echo(
            f"engine {score.engine.value}: score {score.score:.2f}/10 "
            f"(footrule {score.footrule}/{score.footrule_max})"
        )
    for engine_name, counts in sorted(session.criteria.to_dict().items()):
        click.echo(
            f"criteria {engine_name}: dead={counts['dead_links']} "
            f"redundant={counts['redundant']} parasites={counts['parasites']}"
        )


@click.group()
@click.version_option(version=__version__, prog_name="semrank")
def main() -> None:
    """Meta-search re-ranking with ontology-driven query expansion."""


@main.command()
@click.argument("query")
@click.option("--wordnet-dir", envvar="SEMRANK_WORDNET_DIR", default=None,
              help="Directory with the WNDB index.*/data.* files.")
@click.option("--stopwords", "stopwords_path", default=None,
              help="Stopword list file (one word per line).")
@click.option("--pos", "pos_names", default="noun", show_default=True,
              help="Comma-separated parts of speech to project.")
@click.option("--depth", default=1, show_default=True, help="Hypernym hops.")
@click.option("--max-synonyms", default=10, show_default=True)
@click.option("--max-hypernyms", default=10, show_default=True)
def expand(query, wordnet_dir, stopwords_path, pos_names, depth, max_synonyms, max_hypernyms):
    """Print the expansion of QUERY as JSON."""
    pos_set = set()
    for name in pos_names.split(","):
        name = name.strip().lower()
        if not name:
            continue
        if name not in _POS_NAMES:
            raise click.UsageError(f"unknown part of speech {name!r}")
        pos_set.add(_POS_NAMES[name])
    try:
        db = load_db(resolve_dict_dir(wordnet_dir))
        vector = expand_query(
            db,
            query,
            ExpansionConfig(
                pos_set=frozenset(pos_set),
                hypernym_depth=depth,
                max_synonyms_per_term=max_synonyms,
                max_hypernyms_per_term=max_hypernyms,
            ),
            load_stopwords(stopwords_path),
        )
    except SemrankError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(json.dumps(vector.to_dict(), indent=2, sort_keys=True))


_SOURCE_OPTIONS = [
    click.option("--offline", default=None, metavar="DIR",
                 help="Run against a local corpus directory (manifest.json)."),
    click.option("--fixtures", default=None, metavar="DIR",
                 help="Replay recorded engine pages from DIR."),
    click.option("--live", is_flag=True, default=False,
                 help="Query live engines (best effort; markup may have drifted)."),
    click.option("--engines", default="google,bing,yahoo", show_default=True,
                 help="Comma-separated engines for --fixtures/--live."),
]


def _with_source_options(command):
    for option in reversed(_SOURCE_OPTIONS):
        command = option(command)
    return command


@main.command()
@click.argument("query")
@_with_source_options
@click.option("--top-n", default=20, show_default=True)
@click.option("--timeout-ms", default=5000, show_default=True)
@click.option("--alpha", type=float, default=None, help="Synonym weight in [0,1].")
@click.option("--beta", type=float, default=None, help="Hypernym weight in [0,1].")
@click.option("--query-weighting", type=click.Choice(QUERY_WEIGHTINGS), default=None)
@click.option("--config", "config_path", default=None, metavar="INI")
@click.option("--sessions-dir", default=None, metavar="DIR")
@click.option("--wordnet-dir", envvar="SEMRANK_WORDNET_DIR", default=None)
@click.option("--stopwords", "stopwords_path", default=None)
@click.option("--json", "as_json", is_flag=True, default=False,
              help="Emit the full session JSON instead of a table.")
def search(query, offline, fixtures, live, engines, top_n, timeout_ms, alpha, beta,
           query_weighting, config_path, sessions_dir, wordnet_dir, stopwords_path, as_json):
    """Search, re-rank semantically, and grade the engines."""
    providers = _build_providers(offline, fixtures, live, engines)
    try:
        runner = _make_runner(
            wordnet_dir, stopwords_path, providers, config_path,
            top_n, timeout_ms, alpha, beta, query_weighting, sessions_dir,
        )
        session = runner.run(query)
    except SemrankError as exc:
        raise click.ClickException(str(exc)) from exc
    if as_json:
        click.echo(json.dumps(session.to_dict(), indent=2, sort_keys=True))
    else:
        _print_table(session)


@main.command()
@_with_source_options
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8765, show_default=True)
@click.option("--sessions-dir", default=None, metavar="DIR")
@click.option("--ui-dir", default=None, metavar="DIR",
              help="Static UI bundle to serve at / (optional).")
@click.option("--config", "config_path", default=None, metavar="INI")
@click.option("--wordnet-dir", envvar="SEMRANK_WORDNET_DIR", default=None)
@click.option("--stopwords", "stopwords_path", default=None)
@click.option("--top-n", default=20, show_default=True)
@click.option("--timeout-ms", default=5000, show_default=True)
def serve(offline, fixtures, live, engines, host, port, sessions_dir, ui_dir,
          config_path, wordnet_dir, stopwords_path, top_n, timeout_ms):
    """Run the JSON API (and the UI, when a bundle is present)."""
    import uvicorn

    from .service import create_app

    providers = _build_providers(offline, fixtures, live, engines)
    try:
        runner = _make_runner(
            wordnet_dir, stopwords_path, providers, config_path,
            top_n, timeout_ms, None, None, None, sessions_dir,
        )
    except SemrankError as exc:
        raise click.ClickException(str(exc)) from exc
    if ui_dir is None:
        bundled_ui = Path(__file__).parent / "static"
        ui_dir = str(bundled_ui) if bundled_ui.is_dir() else None
    app = create_app(runner, runner.store, ui_dir)
    click.echo(f"serving on http://{host}:{port}", err=True)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main(sys.argv[1:])
