"""In-memory lexical store: synsets, lemma index, and graph lookups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple


class Pos(Enum):
    """Part of speech. Adjective satellites collapse into ``ADJECTIVE``."""

    NOUN = "noun"
    VERB = "verb"
    ADJECTIVE = "adjective"
    ADVERB = "adverb"

    @classmethod
    def from_tag(cls, tag: str) -> "Pos":
        try:
            return _TAG_TO_POS[tag]
        except KeyError:
            raise ValueError(f"unknown part-of-speech tag {tag!r}") from None

    @property
    def file_suffix(self) -> str:
        return _FILE_SUFFIX[self]


_TAG_TO_POS = {
    "n": Pos.NOUN,
    "v": Pos.VERB,
    "a": Pos.ADJECTIVE,
    "s": Pos.ADJECTIVE,
    "r": Pos.ADVERB,
}

_FILE_SUFFIX = {
    Pos.NOUN: "noun",
    Pos.VERB: "verb",
    Pos.ADJECTIVE: "adj",
    Pos.ADVERB: "adv",
}

# Deterministic iteration order for multi-pos operations.
POS_ORDER = (Pos.NOUN, Pos.VERB, Pos.ADJECTIVE, Pos.ADVERB)

HYPERNYM_SYMBOLS = ("@", "@i")
SIMILAR_SYMBOL = "&"


class Pointer(NamedTuple):
    symbol: str
    target_offset: int
    target_pos: Pos


@dataclass(frozen=True, slots=True)
class Synset:
    """One concept: its member lemmas, gloss, and typed links to others."""

    offset: int
    pos: Pos
    lemmas: tuple[str, ...]
    gloss: str
    pointers: tuple[Pointer, ...]

    def __post_init__(self):
        if not self.lemmas:
            raise ValueError(f"synset {self.offset} ({self.pos.value}) has no lemmas")


@dataclass(frozen=True, slots=True)
class PosStats:
    words: int
    synsets: int
    pairs: int


@dataclass(frozen=True)
class WordNetDb:
    """Immutable store built by :func:`semrank.wordnet.wndb.parse_wndb`.

    ``synsets`` is keyed by (pos, offset); ``lemma_index`` maps (lemma, pos)
    to offsets in sense order.  All lookups are read-only, so a single
    instance can serve any number of threads.
    """

    synsets: dict[tuple[Pos, int], Synset]
    lemma_index: dict[tuple[str, Pos], tuple[int, ...]]
    stats: dict[Pos, PosStats] = field(default_factory=dict)

    def totals(self) -> PosStats:
        return PosStats(
            words=sum(s.words for s in self.stats.values()),
            synsets=sum(s.synsets for s in self.stats.values()),
            pairs=sum(s.pairs for s in self.stats.values()),
        )

    def has_lemma(self, lemma: str, pos: Pos) -> bool:
        return (lemma, pos) in self.lemma_index

    def lookup_synsets(self, lemma: str, pos: Pos) -> list[Synset]:
        """Synsets containing ``lemma``, in sense order; [] when absent.

        ``lemma`` must already be normalized (lowercase, underscores for
        collocations).
        """
        offsets = self.lemma_index.get((lemma, pos), ())
        return [self.synsets[(pos, off)] for off in offsets]

    def synonyms_of(self, lemma: str, pos: Pos) -> set[str]:
        """Co-members of every synset containing ``lemma``, minus itself."""
        out: set[str] = set()
        for synset in self.lookup_synsets(lemma, pos):
            out.update(synset.lemmas)
        out.discard(lemma)
        return out

    def hypernyms_of(self, lemma: str, pos: Pos, depth: int = 1) -> set[str]:
        """Lemmas of concepts up to ``depth`` subsumption hops above ``lemma``.

        Follows hypernym and instance-hypernym links; adjectives have no
        subsumption hierarchy, so for them the similar-to cluster is walked
        instead.  Cycles are cut by a visited set.
        """
        return set(self.hypernyms_in_sense_order(lemma, pos, depth))

    def hypernyms_in_sense_order(self, lemma: str, pos: Pos, depth: int) -> list[str]:
        """Like :meth:`hypernyms_of` but as a deduplicated ordered list.

        Order is breadth-first from the lemma's senses, which makes cap
        truncation during query expansion deterministic.
        """
        if depth < 1:
            raise ValueError("depth must be >= 1")
        symbols = (SIMILAR_SYMBOL,) if pos is Pos.ADJECTIVE else HYPERNYM_SYMBOLS
        start = self.lookup_synsets(lemma, pos)
        visited = {(s.pos, s.offset) for s in start}
        frontier = deque((s, 0) for s in start)
        out: list[str] = []
        seen_lemmas: set[str] = {lemma}
        while frontier:
            synset, hops = frontier.popleft()
            if hops > 0:
                for word in synset.lemmas:
                    if word not in seen_lemmas:
                        seen_lemmas.add(word)
                        out.append(word)
            if hops == depth:
                continue
            for ptr in synset.pointers:
                if ptr.symbol not in symbols:
                    continue
                key = (ptr.target_pos, ptr.target_offset)
                if key in visited:
                    continue
                visited.add(key)
                frontier.append((self.synsets[key], hops + 1))
        return out


# Suffix detachment rules, tried in order; first form present in the index
# wins.  Irregular forms are out of scope.
_DETACHMENTS: dict[Pos, tuple[tuple[str, str], ...]] = {
    Pos.NOUN: (
        ("s", ""), ("ses", "s"), ("xes", "x"), ("zes", "z"),
        ("ches", "ch"), ("shes", "sh"), ("men", "man"), ("ies", "y"),
    ),
    Pos.VERB: (
        ("s", ""), ("ies", "y"), ("es", "e"), ("es", ""),
        ("ed", "e"), ("ed", ""), ("ing", "e"), ("ing", ""),
    ),
    Pos.ADJECTIVE: (("er", ""), ("est", ""), ("er", "e"), ("est", "e")),
    Pos.ADVERB: (),
}


def morphy(db: WordNetDb, form: str, pos: Pos) -> str | None:
    """Reduce an inflected ``form`` to a base present in the index.

    Returns the form unchanged when it is already indexed, a detached base
    when one of the standard suffix rules produces an indexed word, and
    None otherwise.
    """
    if db.has_lemma(form, pos):
        return form
    for suffix, replacement in _DETACHMENTS[pos]:
        if not form.endswith(suffix):
            continue
        base = form[: len(form) - len(suffix)] + replacement
        if base and db.has_lemma(base, pos):
            return base
    return None


def iter_lemmas(db: WordNetDb, pos: Pos | None = None) -> Iterable[str]:
    """All indexed lemmas, optionally restricted to one part of speech."""
    for lemma, lemma_pos in db.lemma_index:
        if pos is None or lemma_pos is pos:
            yield lemma
