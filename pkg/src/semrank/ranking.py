"""Semantic ordering, engine agreement scoring, and result-quality criteria."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .content.purify import PageContent
from .errors import SetMismatch
from .providers.models import Engine, ResultEntry
from .urlnorm import host_of, normalize_url
from .vsm import AxisContrib

FLAG_DEAD = "dead_link"
FLAG_REDUNDANT = "redundant"
FLAG_PARASITE = "parasite"

# Floats are rounded at this layer (and only here) before they are compared
# or stored, so rankings and serialized sessions are stable across platforms.
SCORE_DECIMALS = 12


@dataclass(frozen=True)
class ScoredResult:
    """One pooled result with both similarity values and quality flags."""

    entry: ResultEntry
    distance: float
    rsv: float
    flags: frozenset[str] = frozenset()
    contrib: tuple[AxisContrib, ...] = ()
    semantic_rank: int = 0  # assigned by semantic_rank()

    def to_dict(self) -> dict:
        return {
            **self.entry.to_dict(),
            "distance": self.distance,
            "rsv": self.rsv,
            "flags": sorted(self.flags),
            "contrib": [c.to_dict() for c in self.contrib],
            "semantic_rank": self.semantic_rank,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScoredResult":
        return cls(
            entry=ResultEntry.from_dict(data),
            distance=data["distance"],
            rsv=data["rsv"],
            flags=frozenset(data["flags"]),
            contrib=tuple(
                AxisContrib(c["term_tf"], c["synonym_tf_sum"], c["hypernym_tf_sum"])
                for c in data["contrib"]
            ),
            semantic_rank=data["semantic_rank"],
        )


@dataclass(frozen=True)
class EngineScore:
    engine: Engine
    score: float
    footrule: int
    footrule_max: int

    def to_dict(self) -> dict:
        return {
            "engine": self.engine.value,
            "score": self.score,
            "footrule": self.footrule,
            "footrule_max": self.footrule_max,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EngineScore":
        return cls(
            engine=Engine(data["engine"]),
            score=data["score"],
            footrule=data["footrule"],
            footrule_max=data["footrule_max"],
        )


@dataclass(frozen=True)
class CriteriaConfig:
    parasite_threshold: float = 0.7
    parasite_min_text: int = 200

    def __post_init__(self):
        if not 0.0 <= self.parasite_threshold <= 1.0:
            raise ValueError("parasite_threshold must be in [0, 1]")
        if self.parasite_min_text < 0:
            raise ValueError("parasite_min_text must be >= 0")


@dataclass(frozen=True)
class CriteriaCounts:
    dead_links: int = 0
    redundant: int = 0
    parasites: int = 0

    def to_dict(self) -> dict:
        return {
            "dead_links": self.dead_links,
            "redundant": self.redundant,
            "parasites": self.parasites,
        }


@dataclass(frozen=True)
class CriteriaReport:
    per_engine: dict[Engine, CriteriaCounts] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            engine.value: counts.to_dict()
            for engine, counts in sorted(self.per_engine.items(), key=lambda kv: kv[0].value)
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CriteriaReport":
        return cls(per_engine={
            Engine(name): CriteriaCounts(
                dead_links=counts["dead_links"],
                redundant=counts["redundant"],
                parasites=counts["parasites"],
            )
            for name, counts in data.items()
        })


def semantic_rank(scored: Sequence[ScoredResult]) -> list[ScoredResult]:
    """Order results by relevance and assign semantic ranks 1..n.

    Primary key: ascending distance (closest to the query wins).  Ties fall
    back to descending cosine, then the engine's own rank, then the URL, so
    the order is total and permutation-independent.  Distance and cosine are
    rounded here to SCORE_DECIMALS before comparison and storage.
    """
    rounded = [
        replace(
            item,
            distance=round(item.distance, SCORE_DECIMALS),
            rsv=round(item.rsv, SCORE_DECIMALS),
        )
        for item in scored
    ]
    rounded.sort(
        key=lambda r: (r.distance, -r.rsv, r.entry.classical_rank, r.entry.url)
    )
    return [replace(item, semantic_rank=i) for i, item in enumerate(rounded, start=1)]


def footrule_distance(order_a: Sequence[str], order_b: Sequence[str]) -> int:
    """Sum of absolute position displacements between two orders of one set."""
    if set(order_a) != set(order_b) or len(order_a) != len(order_b):
        raise SetMismatch("orders must arrange the same items")
    pos_b = {item: i for i, item in enumerate(order_b)}
    return sum(abs(i - pos_b[item]) for i, item in enumerate(order_a))


def engine_score(
    engine: Engine, classical_order: Sequence[str], semantic_order: Sequence[str]
) -> EngineScore:
    """Grade an engine by how closely its order agrees with the semantic one.

    score = 10 * (1 - F / floor(n^2 / 2)) where F is the footrule distance;
    identical orders score 10, a full reversal scores 0.  With fewer than
    two items no disagreement is possible and the score is 10.
    """
    footrule = footrule_distance(classical_order, semantic_order)
    n = len(classical_order)
    footrule_max = max(1, n * n // 2)
    score = 10.0 * (1.0 - footrule / footrule_max)
    score = min(10.0, max(0.0, round(score, SCORE_DECIMALS)))
    return EngineScore(
        engine=engine, score=score, footrule=footrule, footrule_max=footrule_max
    )


def detect_dead(page: PageContent) -> bool:
    """A dead link failed to fetch: HTTP >= 400, timed out, or unreachable."""
    status = page.fetch_status
    if status.kind == "http_error":
        return status.code is None or status.code >= 400
    return status.kind in ("timeout", "unreachable")


def detect_redundant(entries: Iterable[ResultEntry]) -> set[str]:
    """URLs of entries whose host already appeared earlier in the list.

    The first entry on each host is never flagged; later ones point into a
    site the user has already been offered.
    """
    seen_hosts: set[str] = set()
    flagged: set[str] = set()
    for entry in entries:
        host = host_of(entry.url)
        if host in seen_hosts:
            flagged.add(entry.url)
        else:
            seen_hosts.add(host)
    return flagged


def detect_parasite(page: PageContent, config: CriteriaConfig = CriteriaConfig()) -> bool:
    """True when the page is mostly hyperlink text: a link farm.

    Pages below the text floor are never flagged — a tiny page is sparse,
    not parasitic.
    """
    if page.total_text_len < config.parasite_min_text or page.total_text_len == 0:
        return False
    return page.anchor_text_len / page.total_text_len > config.parasite_threshold


def build_criteria_report(
    per_engine_entries: dict[Engine, list[ResultEntry]],
    pages: dict[str, PageContent],
    config: CriteriaConfig = CriteriaConfig(),
) -> CriteriaReport:
    """Count dead, redundant, and parasite results per engine.

    ``pages`` maps entry URLs (raw or canonical) to their fetched content; a
    URL with no page counts as dead.  Parasite detection only applies to
    pages that fetched ok (a dead page has no text to measure).
    """
    canonical_pages = {normalize_url(url): page for url, page in pages.items()}
    report: dict[Engine, CriteriaCounts] = {}
    for engine, entries in per_engine_entries.items():
        redundant_urls = detect_redundant(entries)
        dead = 0
        parasites = 0
        for entry in entries:
            page = canonical_pages.get(normalize_url(entry.url))
            if page is None or detect_dead(page):
                dead += 1
            elif detect_parasite(page, config):
                parasites += 1
        report[engine] = CriteriaCounts(
            dead_links=dead, redundant=len(redundant_urls), parasites=parasites
        )
    return CriteriaReport(per_engine=report)
