"""Project query terms onto the ontology: synonyms and hypernym concepts."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..content.tokenize import load_stopwords, token_stream
from ..errors import EmptyQuery
from .db import POS_ORDER, Pos, WordNetDb, morphy


@dataclass(frozen=True)
class ExpansionConfig:
    """Knobs for query projection.

    Nouns only by default (query terms are predominantly nominal); one
    subsumption hop; per-term caps keep the expanded vector from drowning
    the literal terms.
    """

    pos_set: frozenset[Pos] = frozenset({Pos.NOUN})
    hypernym_depth: int = 1
    max_synonyms_per_term: int = 10
    max_hypernyms_per_term: int = 10

    def __post_init__(self):
        if not self.pos_set:
            raise ValueError("pos_set must not be empty")
        if self.hypernym_depth < 1:
            raise ValueError("hypernym_depth must be >= 1")
        if self.max_synonyms_per_term < 0 or self.max_hypernyms_per_term < 0:
            raise ValueError("per-term caps must be >= 0")


@dataclass(frozen=True)
class TermExpansion:
    """One query term with the concept groups recovered for it.

    The term never appears in its own groups, and a lemma reachable both as
    synonym and hypernym is kept as synonym only.
    """

    term: str
    synonyms: frozenset[str]
    hypernyms: frozenset[str]

    def __post_init__(self):
        if self.term in self.synonyms or self.term in self.hypernyms:
            raise ValueError(f"term {self.term!r} leaked into its own expansion")
        if self.synonyms & self.hypernyms:
            raise ValueError(f"expansion groups overlap for {self.term!r}")

    def to_dict(self) -> dict:
        return {
            "term": self.term,
            "synonyms": sorted(self.synonyms),
            "hypernyms": sorted(self.hypernyms),
        }


@dataclass(frozen=True)
class SemanticVector:
    entries: tuple[TermExpansion, ...]

    @property
    def terms(self) -> tuple[str, ...]:
        return tuple(entry.term for entry in self.entries)

    def to_dict(self) -> dict:
        return {"entries": [entry.to_dict() for entry in self.entries]}


@lru_cache(maxsize=1)
def _default_stopwords() -> frozenset[str]:
    return load_stopwords()


def _pos_sequence(config: ExpansionConfig) -> tuple[Pos, ...]:
    return tuple(pos for pos in POS_ORDER if pos in config.pos_set)


def _collocation_terms(
    db: WordNetDb, query: str, config: ExpansionConfig, stopwords: frozenset[str]
) -> list[str]:
    """Tokenize the query, greedily joining adjacent pairs that the index
    knows as a single collocation lemma."""
    tokens = token_stream(query, stopwords)
    if not tokens:
        raise EmptyQuery("no query term survived normalization")
    pos_seq = _pos_sequence(config)
    terms: list[str] = []
    i = 0
    while i < len(tokens):
        if i + 1 < len(tokens) and tokens[i + 1].position - tokens[i].position == 1:
            joined = tokens[i].text + "_" + tokens[i + 1].text
            if any(db.has_lemma(joined, pos) for pos in pos_seq):
                terms.append(joined)
                i += 2
                continue
        terms.append(tokens[i].text)
        i += 1
    return terms


def _ordered_unique(items: list[str], exclude: set[str]) -> list[str]:
    seen: set[str] = set()
    out: list[str] = []
    for item in items:
        if item in exclude or item in seen:
            continue
        seen.add(item)
        out.append(item)
    return out


def expand_query(
    db: WordNetDb,
    query: str,
    config: ExpansionConfig | None = None,
    stopwords: frozenset[str] | None = None,
) -> SemanticVector:
    """Build the per-term expansion structure for ``query``.

    Terms keep query order; a term the ontology does not know still yields
    an entry with empty groups, so it stays an axis for literal matching.
    Expansion unions over every sense of a term (no disambiguation), with
    deterministic sense-order truncation when the per-term caps apply.
    Inflected terms fall back to suffix detachment; the recovered base form
    counts as a synonym of the term.
    """
    if config is None:
        config = ExpansionConfig()
    if stopwords is None:
        stopwords = _default_stopwords()

    terms = _collocation_terms(db, query, config, stopwords)
    pos_seq = _pos_sequence(config)

    entries: list[TermExpansion] = []
    covered: set[str] = set()
    for term in terms:
        if term in covered:
            continue
        covered.add(term)

        synonyms: list[str] = []
        hypernyms: list[str] = []
        for pos in pos_seq:
            base = morphy(db, term, pos)
            if base is None:
                continue
            if base != term:
                synonyms.append(base)
            for synset in db.lookup_synsets(base, pos):
                synonyms.extend(w for w in synset.lemmas if w != base)
            hypernyms.extend(
                db.hypernyms_in_sense_order(base, pos, config.hypernym_depth)
            )

        unique_synonyms = _ordered_unique(synonyms, exclude={term})
        unique_hypernyms = _ordered_unique(
            hypernyms, exclude={term, *unique_synonyms}
        )
        entries.append(
            TermExpansion(
                term=term,
                synonyms=frozenset(unique_synonyms[: config.max_synonyms_per_term]),
                hypernyms=frozenset(unique_hypernyms[: config.max_hypernyms_per_term]),
            )
        )

    return SemanticVector(entries=tuple(entries))
