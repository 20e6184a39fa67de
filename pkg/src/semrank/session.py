"""Full pipeline orchestration plus session persistence and view projection.

A session runs: expand the query, ask every configured engine, fetch and
purify each pooled result page, score everything in the expanded vector
space, rank, grade the engines, evaluate the quality criteria, persist.
Stored sessions are plain JSON files so a view change (semantic vs an
engine's classical order) is a pure re-projection with no re-fetching.
"""

from __future__ import annotations

import json
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

from .content.purify import PageContent
from .content.tokenize import TokenizedDoc, load_stopwords, tokenize
from .errors import (
    AllProvidersFailed,
    ConfigError,
    EmptyDocument,
    NotFound,
    ParseFailure,
    ProviderUnavailable,
    StoreCorrupt,
    UnknownEngine,
)
from .providers.models import Engine, Provider, ProviderConfig, ResultEntry
from .ranking import (
    FLAG_DEAD,
    FLAG_PARASITE,
    FLAG_REDUNDANT,
    CriteriaConfig,
    CriteriaReport,
    EngineScore,
    ScoredResult,
    build_criteria_report,
    detect_dead,
    detect_parasite,
    detect_redundant,
    engine_score,
    semantic_rank,
)
from .urlnorm import normalize_url
from .vsm import AxisSet, WeightingConfig, build_doc_vector, build_query_vector, dist, rsv
from .wordnet.db import WordNetDb
from .wordnet.expansion import (
    ExpansionConfig,
    SemanticVector,
    TermExpansion,
    expand_query,
)

SESSION_NAMESPACE = uuid.uuid5(uuid.NAMESPACE_URL, "https://semrank.invalid/session")

# Fields excluded when deriving the session id, so identical inputs produce
# identical ids across runs.
_ID_EXCLUDED_FIELDS = ("session_id", "created_at")


@dataclass(frozen=True)
class ConceptTree:
    """Display shape of the expansion: one root per term, leaves grouped."""

    roots: tuple[TermExpansion, ...]

    @classmethod
    def from_semantic_vector(cls, vector: SemanticVector) -> "ConceptTree":
        return cls(roots=vector.entries)

    def to_dict(self) -> dict:
        return {"roots": [root.to_dict() for root in self.roots]}


@dataclass(frozen=True)
class RankedSession:
    session_id: str
    query: str
    created_at: str
    semantic_vector: SemanticVector
    engines_used: tuple[Engine, ...]
    engines_unavailable: tuple[tuple[Engine, str], ...]
    results: tuple[ScoredResult, ...]
    classical_views: dict[str, tuple[str, ...]]
    engine_scores: tuple[EngineScore, ...]
    criteria: CriteriaReport
    config_snapshot: dict

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "query": self.query,
            "created_at": self.created_at,
            "semantic_vector": self.semantic_vector.to_dict(),
            "engines_used": [engine.value for engine in self.engines_used],
            "engines_unavailable": [
                {"engine": engine.value, "reason": reason}
                for engine, reason in self.engines_unavailable
            ],
            "results": [result.to_dict() for result in self.results],
            "classical_views": {
                engine: list(urls) for engine, urls in self.classical_views.items()
            },
            "engine_scores": [score.to_dict() for score in self.engine_scores],
            "criteria": self.criteria.to_dict(),
            "config_snapshot": self.config_snapshot,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RankedSession":
        vector = SemanticVector(
            entries=tuple(
                TermExpansion(
                    term=entry["term"],
                    synonyms=frozenset(entry["synonyms"]),
                    hypernyms=frozenset(entry["hypernyms"]),
                )
                for entry in data["semantic_vector"]["entries"]
            )
        )
        return cls(
            session_id=data["session_id"],
            query=data["query"],
            created_at=data["created_at"],
            semantic_vector=vector,
            engines_used=tuple(Engine(name) for name in data["engines_used"]),
            engines_unavailable=tuple(
                (Engine(item["engine"]), item["reason"])
                for item in data["engines_unavailable"]
            ),
            results=tuple(ScoredResult.from_dict(r) for r in data["results"]),
            classical_views={
                engine: tuple(urls) for engine, urls in data["classical_views"].items()
            },
            engine_scores=tuple(EngineScore.from_dict(s) for s in data["engine_scores"]),
            criteria=CriteriaReport.from_dict(data["criteria"]),
            config_snapshot=data["config_snapshot"],
        )


def _canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def derive_session_id(payload: dict) -> str:
    """Deterministic id over the session content, timestamps excluded."""
    masked = {k: v for k, v in payload.items() if k not in _ID_EXCLUDED_FIELDS}
    return str(uuid.uuid5(SESSION_NAMESPACE, _canonical_json(masked)))


class SessionStore:
    """One JSON file per session plus an append-only index.

    Files are written canonically (sorted keys, two-space indent) so
    identical sessions are byte-identical on disk.
    """

    INDEX_NAME = "index.jsonl"

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path_for(self, session_id: str) -> Path:
        try:
            uuid.UUID(session_id)
        except ValueError:
            raise NotFound(f"no session {session_id!r}") from None
        return self.directory / f"{session_id}.json"

    def save(self, session: RankedSession) -> Path:
        path = self._path_for(session.session_id)
        payload = json.dumps(session.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)
        path.write_text(payload + "\n", encoding="utf-8")
        index_line = _canonical_json(
            {
                "session_id": session.session_id,
                "query": session.query,
                "created_at": session.created_at,
            }
        )
        with open(self.directory / self.INDEX_NAME, "a", encoding="utf-8") as fh:
            fh.write(index_line + "\n")
        return path

    def load(self, session_id: str) -> RankedSession:
        path = self._path_for(session_id)
        try:
            raw = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise NotFound(f"no session {session_id!r}") from None
        try:
            return RankedSession.from_dict(json.loads(raw))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise StoreCorrupt(str(path)) from exc

    def list_index(self) -> list[dict]:
        path = self.directory / self.INDEX_NAME
        if not path.is_file():
            return []
        entries = []
        for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            try:
                entries.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise StoreCorrupt(f"{path}:{line_no}") from exc
        return entries


@dataclass(frozen=True)
class SessionRunner:
    """Bundles everything a search run needs; immutable and thread-safe."""

    db: WordNetDb
    providers: tuple[Provider, ...]
    provider_config: ProviderConfig = ProviderConfig()
    weighting: WeightingConfig = WeightingConfig()
    expansion: ExpansionConfig = ExpansionConfig()
    criteria: CriteriaConfig = CriteriaConfig()
    stopwords: frozenset[str] = field(default_factory=load_stopwords)
    store: SessionStore | None = None

    def concepts(self, query: str) -> ConceptTree:
        vector = expand_query(self.db, query, self.expansion, self.stopwords)
        return ConceptTree.from_semantic_vector(vector)

    def run(self, query: str) -> RankedSession:
        vector = expand_query(self.db, query, self.expansion, self.stopwords)

        per_engine_entries: dict[Engine, list[ResultEntry]] = {}
        engines_used: list[Engine] = []
        unavailable: list[tuple[Engine, str]] = []
        by_engine_provider: dict[Engine, Provider] = {}
        for provider in self.providers:
            try:
                entries = provider.search(query, self.provider_config)
            except (ProviderUnavailable, ParseFailure) as exc:
                unavailable.append((provider.engine, str(exc)))
                continue
            if not entries:
                unavailable.append((provider.engine, "returned no results"))
                continue
            per_engine_entries[provider.engine] = entries
            engines_used.append(provider.engine)
            by_engine_provider[provider.engine] = provider
        if not per_engine_entries:
            raise AllProvidersFailed(
                "; ".join(f"{engine.value}: {reason}" for engine, reason in unavailable)
                or "no providers configured"
            )

        # Pool results across engines: first engine to report a URL keeps it.
        pooled: list[tuple[str, ResultEntry, Provider]] = []
        seen_keys: set[str] = set()
        for engine in engines_used:
            provider = by_engine_provider[engine]
            for entry in per_engine_entries[engine]:
                key = normalize_url(entry.url)
                if key in seen_keys:
                    continue
                seen_keys.add(key)
                pooled.append((key, entry, provider))

        pages = self._fetch_pooled(pooled)

        docs: dict[str, TokenizedDoc | None] = {}
        for key, entry, _provider in pooled:
            page = pages[key]
            if page.fetch_status.is_ok and page.body_text:
                try:
                    docs[key] = tokenize(page.body_text, self.stopwords, doc_id=key)
                except EmptyDocument:
                    docs[key] = None
            else:
                docs[key] = None

        axes = AxisSet.from_semantic_vector(vector)
        doc_vectors = {
            key: build_doc_vector(docs[key], axes, self.weighting)
            for key, _entry, _provider in pooled
        }
        query_vector = build_query_vector(
            axes, [doc_vectors[key] for key, _e, _p in pooled], self.weighting
        )

        redundant_keys = {
            normalize_url(url)
            for entries in per_engine_entries.values()
            for url in detect_redundant(entries)
        }

        scored = []
        for key, entry, _provider in pooled:
            page = pages[key]
            vector_for_doc = doc_vectors[key]
            flags = set()
            if detect_dead(page):
                flags.add(FLAG_DEAD)
            elif detect_parasite(page, self.criteria):
                flags.add(FLAG_PARASITE)
            if key in redundant_keys:
                flags.add(FLAG_REDUNDANT)
            scored.append(
                ScoredResult(
                    entry=entry,
                    distance=dist(query_vector, vector_for_doc),
                    rsv=rsv(query_vector, vector_for_doc),
                    flags=frozenset(flags),
                    contrib=vector_for_doc.contrib,
                )
            )
        ranked = semantic_rank(scored)

        # Classical views reference the pooled results' canonical entry URLs.
        surviving_url = {key: entry.url for key, entry, _p in pooled}
        classical_views: dict[str, tuple[str, ...]] = {}
        for engine in engines_used:
            classical_views[engine.value] = tuple(
                surviving_url[normalize_url(entry.url)]
                for entry in per_engine_entries[engine]
            )

        engine_scores = []
        for engine in engines_used:
            classical = classical_views[engine.value]
            own = set(classical)
            semantic_restricted = [
                r.entry.url for r in ranked if r.entry.url in own
            ]
            engine_scores.append(engine_score(engine, classical, semantic_restricted))

        criteria = build_criteria_report(per_engine_entries, pages, self.criteria)

        created_at = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        session = RankedSession(
            session_id="",
            query=query,
            created_at=created_at,
            semantic_vector=vector,
            engines_used=tuple(engines_used),
            engines_unavailable=tuple(unavailable),
            results=tuple(ranked),
            classical_views=classical_views,
            engine_scores=tuple(engine_scores),
            criteria=criteria,
            config_snapshot=self._config_snapshot(),
        )
        session_id = derive_session_id(session.to_dict())
        session = replace(session, session_id=session_id)
        if self.store is not None:
            self.store.save(session)
        return session

    def _fetch_pooled(
        self, pooled: list[tuple[str, ResultEntry, Provider]]
    ) -> dict[str, PageContent]:
        if not pooled:
            return {}
        workers = min(self.provider_config.max_parallel_fetches, len(pooled))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pages = pool.map(
                lambda item: item[2].fetch(item[1].url, self.provider_config), pooled
            )
            return {key: page for (key, _e, _p), page in zip(pooled, pages)}

    def _config_snapshot(self) -> dict:
        return {
            "weighting": {
                "alpha": self.weighting.alpha,
                "beta": self.weighting.beta,
                "query_weighting": self.weighting.query_weighting,
            },
            "expansion": {
                "pos_set": sorted(pos.value for pos in self.expansion.pos_set),
                "hypernym_depth": self.expansion.hypernym_depth,
                "max_synonyms_per_term": self.expansion.max_synonyms_per_term,
                "max_hypernyms_per_term": self.expansion.max_hypernyms_per_term,
            },
            "provider": {
                "top_n": self.provider_config.top_n,
                "timeout_ms": self.provider_config.timeout_ms,
                "user_agent": self.provider_config.user_agent,
                "max_parallel_fetches": self.provider_config.max_parallel_fetches,
            },
            "criteria": {
                "parasite_threshold": self.criteria.parasite_threshold,
                "parasite_min_text": self.criteria.parasite_min_text,
            },
            "engines_requested": [provider.engine.value for provider in self.providers],
        }


def rerank_view(
    session: RankedSession, mode: str, engine: str | None = None
) -> dict:
    """Project a stored session into one of its two orders.

    mode "semantic" returns results as ranked; mode "classical" requires an
    engine present in the session and returns its native order.  Pure
    function of stored data: nothing is re-fetched or re-scored.
    """
    if mode == "semantic":
        ordered = [result.to_dict() for result in session.results]
        return {
            "session_id": session.session_id,
            "mode": mode,
            "engine": None,
            "results": ordered,
        }
    if mode == "classical":
        if not engine:
            raise ConfigError("classical mode needs an engine")
        if engine not in session.classical_views:
            raise UnknownEngine(f"engine {engine!r} is not part of this session")
        by_url = {result.entry.url: result for result in session.results}
        ordered = [by_url[url].to_dict() for url in session.classical_views[engine]]
        return {
            "session_id": session.session_id,
            "mode": mode,
            "engine": engine,
            "results": ordered,
        }
    raise ConfigError(f"unknown mode {mode!r}; expected 'semantic' or 'classical'")
