"""Vector-space scoring: TF weights, L1 distance, and cosine RSV.

Documents and the query live in a space with one axis per expanded query
term.  A document's coordinate on an axis blends the literal term's
frequency with discounted frequencies of the axis's synonyms and hypernyms;
the query's coordinates come from smoothed IDF over the retrieved set (or
uniform ones for ablation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .content.tokenize import TokenizedDoc
from .errors import DimensionMismatch, EmptyResultSet
from .wordnet.expansion import SemanticVector, TermExpansion

QUERY_WEIGHTINGS = ("idf", "uniform")


@dataclass(frozen=True)
class WeightingConfig:
    """Mixing coefficients for expansion evidence and the query-side scheme.

    Synonym evidence is discounted by ``alpha``, hypernym evidence by
    ``beta``; literal term occurrences always count in full.  The ordering
    0 <= beta <= alpha <= 1 encodes that more distant concepts never
    outweigh closer ones.
    """

    alpha: float = 0.5
    beta: float = 0.25
    query_weighting: str = "idf"

    def __post_init__(self):
        if not 0.0 <= self.beta <= self.alpha <= 1.0:
            raise ValueError(
                f"require 0 <= beta <= alpha <= 1, got alpha={self.alpha}, beta={self.beta}"
            )
        if self.query_weighting not in QUERY_WEIGHTINGS:
            raise ValueError(f"query_weighting must be one of {QUERY_WEIGHTINGS}")


@dataclass(frozen=True)
class AxisSet:
    """The dimensions of the scoring space, one per expanded query term."""

    axes: tuple[TermExpansion, ...]

    @classmethod
    def from_semantic_vector(cls, vector: SemanticVector) -> "AxisSet":
        return cls(axes=vector.entries)

    @property
    def dimension(self) -> int:
        return len(self.axes)

    @property
    def terms(self) -> tuple[str, ...]:
        return tuple(axis.term for axis in self.axes)


@dataclass(frozen=True)
class AxisContrib:
    """Per-axis weight breakdown, kept for explainability in the UI."""

    term_tf: float
    synonym_tf_sum: float
    hypernym_tf_sum: float

    def to_dict(self) -> dict:
        return {
            "term_tf": self.term_tf,
            "synonym_tf_sum": self.synonym_tf_sum,
            "hypernym_tf_sum": self.hypernym_tf_sum,
        }


@dataclass(frozen=True)
class DocVector:
    doc_id: str
    weights: tuple[float, ...]
    contrib: tuple[AxisContrib, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.contrib):
            raise ValueError("weights and contrib lengths differ")
        if any(w < 0 for w in self.weights):
            raise ValueError("document weights must be non-negative")


@dataclass(frozen=True)
class QueryVector:
    weights: tuple[float, ...]

    def __post_init__(self):
        if not any(w > 0 for w in self.weights):
            raise ValueError("query vector must have a positive component")


def tf(doc: TokenizedDoc, word: str) -> float:
    """Length-normalized term frequency: occurrences over total tokens.

    Collocation lemmas (containing ``_``) are looked up in the document's
    adjacent-bigram counts.
    """
    occ = doc.bigrams.get(word, 0) if "_" in word else doc.counts.get(word, 0)
    return occ / doc.card


def build_doc_vector(
    doc: TokenizedDoc | None, axes: AxisSet, config: WeightingConfig
) -> DocVector:
    """Coordinates of one document over the axis set.

    weight_i = tf(term_i) + alpha * Σ tf(synonym) + beta * Σ tf(hypernym).
    ``doc`` may be None (nothing survived purification or tokenization), in
    which case the document gets the zero vector: dead or empty pages stay
    rankable, at the bottom.
    """
    doc_id = doc.doc_id if doc is not None else ""
    if doc is None:
        zero = AxisContrib(0.0, 0.0, 0.0)
        return DocVector(
            doc_id=doc_id,
            weights=(0.0,) * axes.dimension,
            contrib=(zero,) * axes.dimension,
        )

    weights = []
    contribs = []
    for axis in axes.axes:
        term_tf = tf(doc, axis.term)
        # Sorted iteration pins the float accumulation order.
        syn_sum = sum(tf(doc, w) for w in sorted(axis.synonyms))
        hyp_sum = sum(tf(doc, w) for w in sorted(axis.hypernyms))
        contribs.append(AxisContrib(term_tf, syn_sum, hyp_sum))
        weights.append(term_tf + config.alpha * syn_sum + config.beta * hyp_sum)
    return DocVector(doc_id=doc_id, weights=tuple(weights), contrib=tuple(contribs))


def build_query_vector(
    axes: AxisSet, docs: Sequence[DocVector], config: WeightingConfig
) -> QueryVector:
    """Query-side weights over the axis set.

    idf mode: q_i = ln((N+1)/(n_i+1)) + 1 where N is the number of retrieved
    documents and n_i counts those with a nonzero weight on axis i; the
    add-one smoothing keeps every q_i positive.  uniform mode: all ones.
    """
    if config.query_weighting == "uniform":
        return QueryVector(weights=(1.0,) * axes.dimension)
    if not docs:
        raise EmptyResultSet("query weighting needs at least one document")
    for doc in docs:
        if len(doc.weights) != axes.dimension:
            raise DimensionMismatch(
                f"document {doc.doc_id!r} has {len(doc.weights)} axes, expected {axes.dimension}"
            )
    n_docs = len(docs)
    weights = []
    for i in range(axes.dimension):
        n_i = sum(1 for doc in docs if doc.weights[i] > 0)
        weights.append(math.log((n_docs + 1) / (n_i + 1)) + 1.0)
    return QueryVector(weights=tuple(weights))


def _check_dims(q: QueryVector, d: DocVector) -> None:
    if len(q.weights) != len(d.weights):
        raise DimensionMismatch(
            f"query has {len(q.weights)} axes, document {d.doc_id!r} has {len(d.weights)}"
        )


def dist(q: QueryVector, d: DocVector) -> float:
    """L1 distance between query and document coordinates."""
    _check_dims(q, d)
    qa = np.asarray(q.weights, dtype=np.float64)
    da = np.asarray(d.weights, dtype=np.float64)
    return float(np.abs(qa - da).sum())


def rsv(q: QueryVector, d: DocVector) -> float:
    """Cosine correlation between query and document, in [0, 1].

    The zero document vector has no direction; its RSV is defined as 0.
    """
    _check_dims(q, d)
    qa = np.asarray(q.weights, dtype=np.float64)
    da = np.asarray(d.weights, dtype=np.float64)
    d_norm = float(np.sqrt((da * da).sum()))
    if d_norm == 0.0:
        return 0.0
    q_norm = float(np.sqrt((qa * qa).sum()))
    value = float((qa * da).sum()) / (q_norm * d_norm)
    # Rounding can nudge the ratio past 1 for near-parallel vectors; the
    # contract is a correlation in [0, 1].
    return min(1.0, max(0.0, value))
