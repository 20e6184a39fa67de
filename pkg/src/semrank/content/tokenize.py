"""Text normalization shared by fetched pages and user queries."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import NamedTuple

from ..errors import EmptyDocument

# Maximal alphanumeric runs; underscore is a separator, not a word character.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

MIN_TOKEN_LEN = 2


@dataclass(frozen=True)
class TokenizedDoc:
    """Bag of normalized terms for one document.

    ``counts`` maps each surviving term to its occurrence count and ``card``
    is the total number of surviving tokens, so term frequencies over the
    document's vocabulary sum to one.  ``bigrams`` counts adjacent surviving
    token pairs joined by ``_`` so collocation lemmas can be matched; bigram
    occurrences are bookkept separately and never contribute to ``card``.
    """

    doc_id: str
    counts: dict[str, int]
    card: int
    bigrams: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if sum(self.counts.values()) != self.card:
            raise ValueError(
                f"token conservation violated for {self.doc_id!r}: "
                f"sum(counts)={sum(self.counts.values())} != card={self.card}"
            )


class Token(NamedTuple):
    """A surviving token plus its position in the raw (pre-filter) stream."""

    position: int
    text: str


def token_stream(text: str, stopwords: frozenset[str] | set[str]) -> list[Token]:
    """Normalized tokens in text order, with raw-stream positions.

    Tokens are maximal alphanumeric runs, lowercased; stopwords and tokens
    shorter than two characters are dropped.  Positions count all raw tokens,
    so a gap between consecutive survivors means something was filtered out
    between them.
    """
    kept: list[Token] = []
    for pos, match in enumerate(_TOKEN_RE.finditer(text.lower())):
        token = match.group()
        if len(token) < MIN_TOKEN_LEN or token in stopwords:
            continue
        kept.append(Token(pos, token))
    return kept


def tokenize(text: str, stopwords: frozenset[str] | set[str], doc_id: str = "") -> TokenizedDoc:
    """Split ``text`` into normalized terms with counts.

    Raises :class:`EmptyDocument` when nothing survives normalization.
    """
    kept = token_stream(text, stopwords)
    if not kept:
        raise EmptyDocument(f"no token survived normalization for {doc_id!r}")

    bigrams: Counter[str] = Counter()
    for left, right in zip(kept, kept[1:]):
        # Only pair tokens that were adjacent in the raw stream; joining
        # across a dropped token would fabricate collocations.
        if right.position - left.position == 1:
            bigrams[left.text + "_" + right.text] += 1

    return TokenizedDoc(
        doc_id=doc_id,
        counts=dict(Counter(token.text for token in kept)),
        card=len(kept),
        bigrams=dict(bigrams),
    )


def load_stopwords(path: str | None = None) -> frozenset[str]:
    """Load a stopword list: one lowercase token per line, ``#`` comments."""
    if path is None:
        text = resources.files("semrank.content").joinpath("data/stopwords.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    words = set()
    for line in text.splitlines():
        word = line.split("#", 1)[0].strip().lower()
        if word:
            words.add(word)
    return frozenset(words)
