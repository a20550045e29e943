"""Vector space models over token documents: raw counts and tf-idf.

The tf-idf weighting is pinned exactly: ``idf(t) = ln((1+n)/(1+df(t))) + 1``
with raw in-document counts as tf, and the final vector scaled to unit
Euclidean norm. Count vectors are left unnormalized; cosine similarity is
scale-invariant so nothing is lost. All weights are 64-bit floats and all
reductions use exactly-rounded summation, which keeps results identical
across platforms and iteration orders.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import EmptyVocabulary
from .textprep import TokenDocument


class VectorizerMode(Enum):
    TFIDF = "tfidf"
    COUNT = "count"


@dataclass(frozen=True)
class Vocabulary:
    """Deterministic term space fitted on a set of documents.

    ``doc_freq`` counts documents containing a term, not occurrences;
    ``n_docs`` includes documents that contributed nothing.
    """

    terms: tuple[str, ...]
    index: dict[str, int]
    doc_freq: dict[str, int]
    n_docs: int

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class WeightedVector:
    """Sparse nonnegative vector with entries sorted by index."""

    dim: int
    entries: tuple[tuple[int, float], ...]
    norm: float

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable[tuple[int, float]]) -> "WeightedVector":
        pairs = tuple(entries)
        prev = -1
        for idx, weight in pairs:
            if idx <= prev or idx >= dim:
                raise ValueError("entry indices must be strictly increasing and < dim")
            if weight <= 0.0:
                raise ValueError(f"entry weights must be positive, got {weight!r}")
            prev = idx
        norm = math.sqrt(math.fsum(w * w for _, w in pairs))
        return cls(dim=dim, entries=pairs, norm=norm)

    @classmethod
    def zero(cls, dim: int) -> "WeightedVector":
        return cls(dim=dim, entries=(), norm=0.0)


def fit_vocabulary(docs: Sequence[TokenDocument]) -> Vocabulary:
    """Collect the term union and document frequencies over ``docs``."""
    if not docs:
        raise ValueError("cannot fit a vocabulary on zero documents")
    doc_freq: Counter[str] = Counter()
    for doc in docs:
        doc_freq.update(set(doc.tokens))
    if not doc_freq:
        raise EmptyVocabulary("no document contributed any token")
    terms = tuple(sorted(doc_freq))
    return Vocabulary(
        terms=terms,
        index={t: i for i, t in enumerate(terms)},
        doc_freq=dict(doc_freq),
        n_docs=len(docs),
    )


def count_vector(doc: TokenDocument, vocab: Vocabulary) -> WeightedVector:
    """Raw occurrence counts of in-vocabulary tokens; out-of-vocabulary tokens are ignored."""
    counts = Counter(doc.tokens)
    present = sorted(t for t in counts if t in vocab.index)
    if not present:
        return WeightedVector.zero(len(vocab))
    return WeightedVector.from_entries(
        len(vocab), ((vocab.index[t], float(counts[t])) for t in present)
    )


def idf_weights(vocab: Vocabulary) -> dict[str, float]:
    """Smoothed inverse document frequency for every vocabulary term."""
    n = vocab.n_docs
    return {t: math.log((1 + n) / (1 + vocab.doc_freq[t])) + 1.0 for t in vocab.terms}


def tfidf_vector(doc: TokenDocument, vocab: Vocabulary) -> WeightedVector:
    """Counts reweighted by idf, scaled to unit Euclidean norm."""
    counts = Counter(doc.tokens)
    present = sorted(t for t in counts if t in vocab.index)
    if not present:
        return WeightedVector.zero(len(vocab))
    idf = idf_weights(vocab)
    raw = [(vocab.index[t], counts[t] * idf[t]) for t in present]
    norm = math.sqrt(math.fsum(w * w for _, w in raw))
    return WeightedVector.from_entries(len(vocab), ((i, w / norm) for i, w in raw))
